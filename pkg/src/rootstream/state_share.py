"""State sharing: many output streams over one congruential root sequence.

A stream never runs its own multiply chain. Stream i owns a small additive
offset h and reads the shared root states x[n]; its leaf states are
w[n] = (x[n] + h) mod 2**64. Adding a constant to every element of a
congruential sequence yields another congruential sequence with the same
multiplier, so each leaf is also expressible as a standalone recurrence
(see effective_increment), which is what makes per-stream jumps cheap and
lets an alternative execution plan skip the shared root entirely.
"""

from __future__ import annotations

import threading

import numpy as np

from .lcg import MASK64, AdvanceParams, LcgParams, advance_params, lcg_jump

#: Streams may use any even offset below 2**64; the default assignment is
#: h = 2*stream_id, which keeps offsets even and unique for up to 2**63 ids.
MAX_STREAM_ID = (1 << 63) - 1


def leaf_transition(x: int, h: int) -> int:
    """Leaf state derived from a root state: ``(x + h) mod 2**64``."""
    return (x + h) & MASK64


def effective_increment(params: LcgParams, h: int) -> int:
    """Increment of the standalone recurrence that generates a leaf sequence.

    From w[n] = x[n] + h:

        w[n+1] = a*x[n] + c + h = a*(x[n] + h) + c - (a - 1)*h

    so the leaf sequence satisfies w[n+1] = a*w[n] + c_eff with
    c_eff = (c - (a - 1)*h) mod 2**64. Since a - 1 is even, c_eff has the
    parity of c for every offset: an odd root increment makes every leaf a
    full-period recurrence, an even one makes none of them so.
    """
    return (params.c - (params.a - 1) * h) & MASK64


def leaf_params(params: LcgParams, h: int) -> LcgParams:
    """Standalone parameters of the leaf with offset h."""
    return LcgParams(params.a, effective_increment(params, h))


def validate_leaf_offset(h: int) -> int:
    """Check the offset contract: even, unsigned, below 2**64."""
    if not 0 <= h <= MASK64:
        raise ValueError("leaf offset must be an unsigned 64-bit integer")
    if h % 2 != 0:
        raise ValueError("leaf offset must be even")
    return h


def default_offset_for(stream_id: int) -> int:
    """Offset assignment rule ``h = 2*stream_id``."""
    if not 0 <= stream_id <= MAX_STREAM_ID:
        raise ValueError("stream id must satisfy 0 <= id < 2**63")
    return 2 * stream_id


class RootGenerator:
    """Root sequence producer decomposed into L lanes of stride L.

    Lane j holds the states x[j+1], x[j+1+L], x[j+1+2L], ...; a call emits
    the current state of one lane, advances that lane by L steps with the
    folded multiply-add, and rotates the merge cursor. Merged round-robin,
    the lanes reproduce the plain sequential sequence for every L, which is
    the point: lane count is a throughput knob, not an output knob. L=6
    mirrors a six-generator hardware schedule; the software default is 1.
    """

    def __init__(self, params: LcgParams, seed: int, lanes: int = 1) -> None:
        if lanes < 1:
            raise ValueError("lane count must be at least 1")
        if not 0 <= seed <= MASK64:
            raise ValueError("seed state must be an unsigned 64-bit integer")
        self.params = params
        self.lanes = lanes
        self._stride: AdvanceParams = advance_params(params, lanes)
        # Lane j sits at x[j+1] so the first emissions are x[1], x[2], ...
        self._lane_states = [lcg_jump(params, seed, j + 1) for j in range(lanes)]
        self._cursor = 0

    def root_next(self) -> int:
        """Next root state in global order."""
        state = self._lane_states[self._cursor]
        self._lane_states[self._cursor] = (
            self._stride.a_k * state + self._stride.c_k
        ) & MASK64
        self._cursor = (self._cursor + 1) % self.lanes
        return state


class RootBlockCache:
    """Shared blocks of consecutive root states, produced once, read by all.

    Block j holds positions j*B .. j*B + B - 1 (position p meaning p steps
    from the seed state). Production happens under a lock and the resulting
    arrays are frozen, so any number of leaf consumers may read a completed
    block concurrently; a bounded number of recent blocks is kept.
    """

    def __init__(
        self,
        params: LcgParams,
        root_seed: int,
        block_size: int = 4096,
        max_blocks: int = 32,
    ) -> None:
        if block_size < 1:
            raise ValueError("block size must be positive")
        self.params = params
        self.root_seed = root_seed & MASK64
        self.block_size = block_size
        self.max_blocks = max_blocks
        self._lock = threading.Lock()
        self._blocks: dict[int, np.ndarray] = {}
        # Per-index fold of the recurrence: entry i advances i steps, so a
        # whole block is one vectorized multiply-add from its base state.
        a_list = np.empty(block_size, dtype=np.uint64)
        c_list = np.empty(block_size, dtype=np.uint64)
        acc_a, acc_c = 1, 0
        for i in range(block_size):
            a_list[i] = acc_a
            c_list[i] = acc_c
            acc_a = (acc_a * params.a) & MASK64
            acc_c = (acc_c * params.a + params.c) & MASK64
        self._a_vec = a_list
        self._c_vec = c_list

    def _block(self, j: int) -> np.ndarray:
        with self._lock:
            arr = self._blocks.get(j)
            if arr is None:
                base = lcg_jump(self.params, self.root_seed, j * self.block_size)
                arr = self._a_vec * np.uint64(base) + self._c_vec
                arr.flags.writeable = False
                if len(self._blocks) >= self.max_blocks:
                    self._blocks.pop(next(iter(self._blocks)))
                self._blocks[j] = arr
            else:
                # refresh LRU position
                self._blocks[j] = self._blocks.pop(j)
            return arr

    def range(self, start: int, count: int) -> np.ndarray:
        """Root states at positions start .. start+count-1 as uint64."""
        if start < 0 or count < 0:
            raise ValueError("range must be non-negative")
        out = np.empty(count, dtype=np.uint64)
        filled = 0
        pos = start
        b = self.block_size
        while filled < count:
            j, off = divmod(pos, b)
            take = min(b - off, count - filled)
            out[filled : filled + take] = self._block(j)[off : off + take]
            filled += take
            pos += take
        return out

    def state_at(self, position: int) -> int:
        """Scalar root state after ``position`` steps from the seed state."""
        return lcg_jump(self.params, self.root_seed, position)


__all__ = [
    "MAX_STREAM_ID",
    "RootBlockCache",
    "RootGenerator",
    "default_offset_for",
    "effective_increment",
    "leaf_params",
    "leaf_transition",
    "validate_leaf_offset",
]
