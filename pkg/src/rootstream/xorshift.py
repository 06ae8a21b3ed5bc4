"""xorshift128 decorrelator and its GF(2) jump arithmetic.

Leaves of a shared congruential root are strongly cross-correlated; each
stream therefore XORs its scrambled output with a word from a private
xorshift128 sequence. The xorshift map is linear over GF(2), so jumping a
state k steps ahead is a 128x128 bit-matrix power applied to the state
vector. Stream i gets the master sequence jumped by i*2**64, which spaces
substreams far enough apart that no two overlap within any realistic draw
count (the full period is 2**128 - 1).
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

from .lcg import MASK32, MASK64

#: Marsaglia's shift triple for the 128-bit generator.
SHIFTS = (11, 8, 19)

#: Distance between consecutive substreams.
SUBSTREAM_SPACING = 1 << 64

_PERIOD = (1 << 128) - 1


@dataclass(frozen=True)
class Xorshift128State:
    """Four 32-bit words. The all-zero state is a fixed point and rejected."""

    x: int
    y: int
    z: int
    w: int

    def __post_init__(self) -> None:
        for word in (self.x, self.y, self.z, self.w):
            if not 0 <= word <= MASK32:
                raise ValueError("state words must be unsigned 32-bit integers")
        if self.x == self.y == self.z == self.w == 0:
            raise ValueError("the all-zero state is invalid")


DEFAULT_SEED_STATE = Xorshift128State(123456789, 362436069, 521288629, 88675123)


def xs_step(state: Xorshift128State) -> tuple[Xorshift128State, int]:
    """One step; returns the new state and its output word (the new w)."""
    t = (state.x ^ (state.x << 11)) & MASK32
    w = ((state.w ^ (state.w >> 19)) ^ (t ^ (t >> 8))) & MASK32
    return Xorshift128State(state.y, state.z, state.w, w), w


def _splitmix64(z: int) -> int:
    z = (z + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def seed_state(seed: int) -> Xorshift128State:
    """Expand a 64-bit seed into a valid state.

    Two rounds of the splitmix64 finalizer supply 128 well-mixed bits; the
    (never observed in practice) all-zero result falls back to the default
    seed state so construction cannot fail.
    """
    if not 0 <= seed <= MASK64:
        raise ValueError("seed must be an unsigned 64-bit integer")
    lo = _splitmix64(seed)
    hi = _splitmix64((seed + 1) & MASK64)
    words = (lo & MASK32, lo >> 32, hi & MASK32, hi >> 32)
    if words == (0, 0, 0, 0):
        return DEFAULT_SEED_STATE
    return Xorshift128State(*words)


# --- GF(2) linear algebra -------------------------------------------------
#
# A state is flattened to a 128-bit integer: bits 0..31 hold x, 32..63 y,
# 64..95 z, 96..127 w. A matrix is 128 rows of 128-bit integers; row i is
# the image of unit state e_i, so applying the matrix to a state vector is
# an XOR fold of the rows selected by the state's set bits.


def state_to_bits(state: Xorshift128State) -> int:
    return state.x | (state.y << 32) | (state.z << 64) | (state.w << 96)


def bits_to_state(bits: int) -> Xorshift128State:
    return Xorshift128State(
        bits & MASK32, (bits >> 32) & MASK32, (bits >> 64) & MASK32, (bits >> 96) & MASK32
    )


@dataclass(frozen=True)
class Gf2Matrix128:
    """128x128 bit matrix; ``rows[i]`` is a 128-bit integer."""

    rows: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.rows) != 128:
            raise ValueError("expected 128 rows")

    def apply(self, bits: int) -> int:
        """Row-vector times matrix: XOR of rows picked by set bits."""
        acc = 0
        rows = self.rows
        while bits:
            low = bits & -bits
            acc ^= rows[low.bit_length() - 1]
            bits ^= low
        return acc

    def matmul(self, other: "Gf2Matrix128") -> "Gf2Matrix128":
        return Gf2Matrix128(tuple(other.apply(r) for r in self.rows))

    def is_invertible(self) -> bool:
        """Rank check by gaussian elimination."""
        rows = list(self.rows)
        rank = 0
        for bit in range(128):
            mask = 1 << bit
            pivot = next((i for i in range(rank, 128) if rows[i] & mask), None)
            if pivot is None:
                continue
            rows[rank], rows[pivot] = rows[pivot], rows[rank]
            for i in range(128):
                if i != rank and rows[i] & mask:
                    rows[i] ^= rows[rank]
            rank += 1
        return rank == 128


def gf2_identity() -> Gf2Matrix128:
    return Gf2Matrix128(tuple(1 << i for i in range(128)))


@lru_cache(maxsize=1)
def xs_transition_matrix() -> Gf2Matrix128:
    """Transition matrix T with ``state_bits * T == bits(xs_step(state))``.

    Built column by column: xs_step is pure shift-and-xor, hence linear, so
    stepping each unit vector through it yields the matrix rows directly.
    The zero-state rejection in the constructor is bypassed by stepping the
    word pattern manually.
    """
    rows = []
    for i in range(128):
        bits = 1 << i
        x = bits & MASK32
        y = (bits >> 32) & MASK32
        z = (bits >> 64) & MASK32
        w = (bits >> 96) & MASK32
        t = (x ^ (x << 11)) & MASK32
        nw = ((w ^ (w >> 19)) ^ (t ^ (t >> 8))) & MASK32
        rows.append(y | (z << 32) | (w << 64) | (nw << 96))
    return Gf2Matrix128(tuple(rows))


_POWER_CACHE: list[Gf2Matrix128] = []
_POWER_LOCK = threading.Lock()


def _power_of_two_matrices(top_bit: int) -> list[Gf2Matrix128]:
    """T**(2**i) for i = 0..top_bit, extended lazily and memoized.

    Locked so concurrent fills cannot interleave their extensions.
    """
    if len(_POWER_CACHE) > top_bit:
        return _POWER_CACHE
    with _POWER_LOCK:
        if not _POWER_CACHE:
            _POWER_CACHE.append(xs_transition_matrix())
        while len(_POWER_CACHE) <= top_bit:
            last = _POWER_CACHE[-1]
            _POWER_CACHE.append(last.matmul(last))
    return _POWER_CACHE


@lru_cache(maxsize=128)
def xs_matrix_power(k: int) -> Gf2Matrix128:
    """T**k by square-and-multiply over the cached power-of-two matrices."""
    k %= _PERIOD
    if k == 0:
        return gf2_identity()
    powers = _power_of_two_matrices(k.bit_length() - 1)
    result = None
    bit = 0
    while k:
        if k & 1:
            result = powers[bit] if result is None else result.matmul(powers[bit])
        k >>= 1
        bit += 1
    return result


def xs_jump(state: Xorshift128State, k: int) -> Xorshift128State:
    """State after k steps, in O(log k) word operations.

    The step count reduces modulo the full period 2**128 - 1, so arbitrarily
    large python integers are accepted.
    """
    if k < 0:
        raise ValueError("jump distance must be non-negative")
    k %= _PERIOD
    if k == 0:
        return state
    bits = state_to_bits(state)
    powers = _power_of_two_matrices(k.bit_length() - 1)
    bit = 0
    while k:
        if k & 1:
            bits = powers[bit].apply(bits)
        k >>= 1
        bit += 1
    return bits_to_state(bits)


def substream_for(master: Xorshift128State, i: int) -> Xorshift128State:
    """Start state of substream i: the master jumped by ``i * 2**64``."""
    if i < 0:
        raise ValueError("substream index must be non-negative")
    return xs_jump(master, i * SUBSTREAM_SPACING)
