"""Stream API: configuration, per-stream state and the generator facade.

A generator owns one shared root recurrence and hands out numbered output
streams. Stream i is the root sequence offset by h = 2*i, scrambled to 32
bits and (in the full mode) XORed with a private xorshift128 substream.
Outputs are a pure function of the configuration: thread count, batch size
and fill slicing never change a single bit.
"""

from __future__ import annotations

import enum
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from . import _engine
from .lcg import (
    MASK32,
    MASK64,
    PAPER_PARAMS,
    STRICT_PARAMS,
    LcgParams,
    advance_params,
)
from .output import MODES, OutputMode, Scramble
from .state_share import (
    RootBlockCache,
    default_offset_for,
    effective_increment,
    leaf_transition,
)
from .xorshift import (
    Xorshift128State,
    _splitmix64,
    substream_for,
    xs_jump,
)

#: Gap between the splitmix64 inputs used to derive independent seed words.
_SEED_GAMMA = 0x9E3779B97F4A7C15

#: Below this many outputs a python loop beats the lane setup cost.
_VECTOR_MIN = 4096


class Profile(enum.Enum):
    """Parameter profile: ``paper`` keeps increment 54 (even, so the root
    recurrence is not full period); ``strict`` swaps in an odd increment
    that satisfies the full-period conditions."""

    PAPER = "paper"
    STRICT = "strict"

    @property
    def params(self) -> LcgParams:
        return PAPER_PARAMS if self is Profile.PAPER else STRICT_PARAMS


class Plan(enum.Enum):
    """Execution plan. ``shared``: the root produces blocks of states that
    every leaf reads (one multiply chain for all streams). ``independent``:
    each stream advances its own effective recurrence. The two plans produce
    identical outputs; the choice is a data-flow and scheduling knob."""

    SHARED_ROOT_BATCHED = "shared"
    INDEPENDENT_LEAF = "independent"


@dataclass(frozen=True)
class GeneratorConfig:
    seed: int
    n_streams: int = 1
    mode: OutputMode = MODES["full"]
    profile: Profile = Profile.PAPER
    plan: Plan = Plan.SHARED_ROOT_BATCHED
    batch_size: int = 4096

    def __post_init__(self) -> None:
        if not 0 <= self.seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        if not 1 <= self.n_streams < (1 << 63):
            raise ValueError("n_streams must satisfy 1 <= n < 2**63")
        if self.batch_size < 1:
            raise ValueError("batch_size must be positive")


@dataclass
class StreamState:
    """Logical state of one stream.

    ``leaf`` is the current leaf word (root state at ``position`` plus the
    offset), identical under both plans. ``xs`` only advances in modes that
    decorrelate.
    """

    stream_id: int
    h: int
    c_eff: int
    position: int
    leaf: int
    xs: Xorshift128State


def _derive_root_seed(seed: int) -> int:
    return _splitmix64(seed)


def _derive_master(seed: int) -> Xorshift128State:
    lo = _splitmix64((seed + _SEED_GAMMA) & MASK64)
    hi = _splitmix64((seed + 2 * _SEED_GAMMA) & MASK64)
    words = (lo & MASK32, lo >> 32, hi & MASK32, hi >> 32)
    if words == (0, 0, 0, 0):  # pragma: no cover - astronomically unlikely
        from .xorshift import DEFAULT_SEED_STATE

        return DEFAULT_SEED_STATE
    return Xorshift128State(*words)


class MultiStreamRng:
    """Deterministic multi-stream generator over one shared root."""

    def __init__(self, config: GeneratorConfig) -> None:
        self.config = config
        self.params = config.profile.params
        self._root_seed = _derive_root_seed(config.seed)
        self._master = _derive_master(config.seed)
        self._states: dict[int, StreamState] = {}
        self._cache: RootBlockCache | None = None
        if config.plan is Plan.SHARED_ROOT_BATCHED:
            self._cache = RootBlockCache(
                self.params, self._root_seed, block_size=config.batch_size
            )

    # -- stream state -----------------------------------------------------

    def _state(self, stream_id: int) -> StreamState:
        if not 0 <= stream_id < self.config.n_streams:
            raise IndexError(
                f"stream id {stream_id} out of range for {self.config.n_streams} streams"
            )
        st = self._states.get(stream_id)
        if st is None:
            h = default_offset_for(stream_id)
            st = StreamState(
                stream_id=stream_id,
                h=h,
                c_eff=effective_increment(self.params, h),
                position=0,
                leaf=leaf_transition(self._root_seed, h),
                xs=substream_for(self._master, stream_id),
            )
            self._states[stream_id] = st
        return st

    def state_snapshot(self, stream_id: int) -> StreamState:
        """Copy of the stream's logical state (for inspection and tests)."""
        return replace(self._state(stream_id))

    # -- scalar path -------------------------------------------------------

    def next_u32(self, stream_id: int) -> int:
        """Next 32-bit output of one stream."""
        return int(self._scalar_fill(self._state(stream_id), 1)[0])

    def next_f64_unit(self, stream_id: int) -> float:
        """Next output mapped to [0, 1): ``u32 / 2**32``."""
        return self.next_u32(stream_id) / 4294967296.0

    def _scalar_fill(self, st: StreamState, n: int) -> np.ndarray:
        mode = self.config.mode
        permute = mode.scramble is Scramble.PERMUTE_XSH_RR
        decorr = mode.decorrelate
        a, c = self.params.a, st.c_eff
        w = st.leaf
        x, y, z, wv = st.xs.x, st.xs.y, st.xs.z, st.xs.w
        out = np.empty(n, dtype=np.uint32)
        for i in range(n):
            w = (a * w + c) & MASK64
            if permute:
                rot = w >> 59
                folded = (((w >> 18) ^ w) >> 27) & MASK32
                val = ((folded >> rot) | (folded << ((32 - rot) & 31))) & MASK32
            else:
                val = w >> 32
            if decorr:
                t = (x ^ (x << 11)) & MASK32
                nw = ((wv ^ (wv >> 19)) ^ (t ^ (t >> 8))) & MASK32
                x, y, z, wv = y, z, wv, nw
                val ^= nw
            out[i] = val
        st.leaf = w
        st.position += n
        if decorr:
            st.xs = Xorshift128State(x, y, z, wv)
        return out

    # -- bulk path ---------------------------------------------------------

    def fill(self, stream_id: int, n: int) -> np.ndarray:
        """Next n outputs of one stream as a uint32 array."""
        if n < 0:
            raise ValueError("fill count must be non-negative")
        st = self._state(stream_id)
        if n == 0:
            return np.empty(0, dtype=np.uint32)
        if n < _VECTOR_MIN:
            return self._scalar_fill(st, n)
        return _engine.bulk_fill(self.params, self.config.mode, self._cache, [st], n)[0]

    def fill_matrix(
        self, stream_ids: list[int], n: int, threads: int = 1
    ) -> np.ndarray:
        """Aligned fill: row r holds the next n outputs of stream_ids[r].

        With ``threads`` > 1 the streams are partitioned into contiguous
        groups filled concurrently; the output is identical for every
        thread count.
        """
        if len(set(stream_ids)) != len(stream_ids):
            raise ValueError("stream ids must be unique")
        if n < 0:
            raise ValueError("fill count must be non-negative")
        states = [self._state(i) for i in stream_ids]
        k = len(states)
        if k == 0 or n == 0:
            return np.empty((k, n), dtype=np.uint32)
        if k * n < 2 * _VECTOR_MIN:
            return np.stack([self._scalar_fill(st, n) for st in states])
        if threads <= 1 or k < 2 * threads:
            return _engine.bulk_fill(
                self.params, self.config.mode, self._cache, states, n
            )
        out = np.empty((k, n), dtype=np.uint32)
        bounds = [(k * t) // threads for t in range(threads + 1)]

        def run(lo: int, hi: int) -> None:
            out[lo:hi] = _engine.bulk_fill(
                self.params, self.config.mode, self._cache, states[lo:hi], n
            )

        with ThreadPoolExecutor(max_workers=threads) as pool:
            futures = [
                pool.submit(run, lo, hi)
                for lo, hi in zip(bounds, bounds[1:])
                if hi > lo
            ]
            for f in futures:
                f.result()
        return out

    def skip(self, stream_id: int, k: int) -> None:
        """Advance one stream k outputs without emitting, in O(log k)."""
        if k < 0:
            raise ValueError("skip count must be non-negative")
        st = self._state(stream_id)
        adv = advance_params(LcgParams(self.params.a, st.c_eff), k)
        st.leaf = (adv.a_k * st.leaf + adv.c_k) & MASK64
        st.position += k
        if self.config.mode.decorrelate:
            st.xs = xs_jump(st.xs, k)

    def interleave(
        self, stream_ids: list[int], total: int, threads: int = 1
    ) -> np.ndarray:
        """Round-robin merge: stream_ids[0] first, one word each, repeating.

        Only emitted words are consumed: with a truncated final round the
        later streams advance one output less than the earlier ones.
        """
        if total < 0:
            raise ValueError("total count must be non-negative")
        k = len(stream_ids)
        if k == 0:
            raise ValueError("at least one stream id is required")
        full_rounds, extra = divmod(total, k)
        out = np.empty(total, dtype=np.uint32)
        if full_rounds:
            m = self.fill_matrix(stream_ids, full_rounds, threads=threads)
            out[: full_rounds * k] = m.T.ravel()
        for r in range(extra):
            out[full_rounds * k + r] = self.next_u32(stream_ids[r])
        return out


def new_generator(config: GeneratorConfig) -> MultiStreamRng:
    """Build a generator; equal configs always yield identical outputs."""
    return MultiStreamRng(config)
