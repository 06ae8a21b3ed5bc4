"""Vectorized fill kernels behind the stream API.

Both recurrences are sequential, but both have O(log k) jumps, so a fill of
n outputs splits into lanes: lane j starts at stream position p + j*chunk
(start states computed by jumping, never by stepping) and every lane then
advances together, one numpy op per recurrence step, emitting a lane-width
of outputs per iteration. Lane starts are exact jumps, so the merged output
is bit for bit the scalar sequence; lane count is a throughput knob only.

Exactness rests on numpy uint64/uint32 arithmetic wrapping exactly like the
masked python-int arithmetic of the scalar path, which the test suite pins.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, Sequence

import numpy as np

from .lcg import MASK32, MASK64, LcgParams, advance_params
from .output import OutputMode, Scramble
from .state_share import RootBlockCache
from .xorshift import state_to_bits, xs_jump, xs_matrix_power

if TYPE_CHECKING:  # pragma: no cover
    from .streams import StreamState

#: Preferred total lane width across all streams of a fill.
WIDTH_TARGET = 4096
#: Minimum steps per lane; below this the jump setup outweighs the win.
MIN_CHUNK = 256
#: uint64 elements per shared-root window segment (bounds working memory).
SEGMENT_ELEMS = 1 << 21


def plan_lanes(n_streams: int, n: int) -> tuple[int, int]:
    """Lanes per stream and steps per lane for a fill of n outputs."""
    lanes = max(1, min(WIDTH_TARGET // n_streams, -(-n // MIN_CHUNK)))
    chunk = -(-n // lanes)
    return lanes, chunk


def _geometric_sum(params: LcgParams, k: int) -> int:
    """(1 + a + ... + a**(k-1)) mod 2**64, via the doubling fold with c=1."""
    return advance_params(LcgParams(params.a, 1), k).c_k


def bulk_fill(
    params: LcgParams,
    mode: OutputMode,
    cache: RootBlockCache | None,
    states: Sequence["StreamState"],
    n: int,
) -> np.ndarray:
    """Fill n outputs for every stream in ``states``; returns (k, n) uint32.

    ``cache`` present selects the shared-root plan: leaf words are read as
    root block states plus the stream offset. ``cache`` None selects the
    independent plan: each lane advances its own effective recurrence.
    Stream states are advanced past the filled range either way.
    """
    k = len(states)
    lanes, chunk = plan_lanes(k, n)
    width = k * lanes
    a64 = np.uint64(params.a)
    shared = cache is not None
    decorr = mode.decorrelate
    permute = mode.scramble is Scramble.PERMUTE_XSH_RR

    c_eff = np.fromiter((st.c_eff for st in states), dtype=np.uint64, count=k)
    c_vec = np.repeat(c_eff, lanes)

    if shared:
        h_vec = np.repeat(
            np.fromiter((st.h for st in states), dtype=np.uint64, count=k), lanes
        )
        leaf = None
    else:
        # Lane start states: chained jumps of `chunk` steps on the effective
        # recurrence. The composite multiplier is shared; the composite
        # increment is c_eff times the geometric sum, per stream.
        a_chunk = advance_params(params, chunk).a_k
        s_chunk = _geometric_sum(params, chunk)
        starts = np.empty(width, dtype=np.uint64)
        for si, st in enumerate(states):
            c_step = (st.c_eff * s_chunk) & MASK64
            w = st.leaf
            for lane in range(lanes):
                starts[si * lanes + lane] = w
                if lane + 1 < lanes:
                    w = (a_chunk * w + c_step) & MASK64
        leaf = starts

    if decorr:
        mat = xs_matrix_power(chunk)
        lane_bits = []
        for st in states:
            bits = state_to_bits(st.xs)
            for lane in range(lanes):
                lane_bits.append(bits)
                if lane + 1 < lanes:
                    bits = mat.apply(bits)
        xs_x = np.fromiter((b & MASK32 for b in lane_bits), np.uint32, width)
        xs_y = np.fromiter(((b >> 32) & MASK32 for b in lane_bits), np.uint32, width)
        xs_z = np.fromiter(((b >> 64) & MASK32 for b in lane_bits), np.uint32, width)
        xs_w = np.fromiter(((b >> 96) & MASK32 for b in lane_bits), np.uint32, width)

    out = np.empty((chunk, width), dtype=np.uint32)
    seg_len = max(1, SEGMENT_ELEMS // width) if shared else chunk
    window = np.empty((min(seg_len, chunk), width), dtype=np.uint64) if shared else None

    t = 0
    while t < chunk:
        cur = min(seg_len, chunk - t)
        if shared:
            # One window column per lane: consecutive root states starting
            # at the lane's current absolute position. Blocks are produced
            # once in the cache and shared by every lane that touches them.
            for idx in range(width):
                st = states[idx // lanes]
                lane = idx % lanes
                window[:cur, idx] = cache.range(
                    st.position + lane * chunk + t + 1, cur
                )
        for s in range(cur):
            if shared:
                w = window[s] + h_vec
            else:
                np.multiply(leaf, a64, out=leaf)
                np.add(leaf, c_vec, out=leaf)
                w = leaf
            if permute:
                rot = (w >> 59).astype(np.uint32)
                folded = (((w >> 18) ^ w) >> 27).astype(np.uint32)
                col = (folded >> rot) | (folded << ((32 - rot) & 31))
            else:
                col = (w >> 32).astype(np.uint32)
            if decorr:
                tmp = xs_x ^ (xs_x << 11)
                new_w = xs_w ^ (xs_w >> 19)
                new_w ^= tmp
                new_w ^= tmp >> 8
                xs_x, xs_y, xs_z, xs_w = xs_y, xs_z, xs_w, new_w
                col = col ^ new_w
            out[t + s] = col
        t += cur

    result = out.T.reshape(k, lanes * chunk)[:, :n]

    # Advance the logical stream states past the filled range.
    a_n = advance_params(params, n).a_k
    s_n = _geometric_sum(params, n)
    for st in states:
        st.position += n
        st.leaf = (a_n * st.leaf + st.c_eff * s_n) & MASK64
        if decorr:
            st.xs = xs_jump(st.xs, n)
    return result
