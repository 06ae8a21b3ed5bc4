"""Congruential core: the 64-bit multiply-add recurrence and its jump arithmetic.

Everything here is modulo 2**64, so reduction is a bitwise AND on python ints
and plain wraparound on numpy uint64 arrays. The module also carries a
scaled-down variant (modulus 2**b for small b) whose cycle structure can be
walked exhaustively; the full-size recurrence is validated against it.
"""

from __future__ import annotations

from dataclasses import dataclass

MASK64 = (1 << 64) - 1
MASK32 = (1 << 32) - 1

#: Multiplier shared by both parameter profiles.
MULTIPLIER = 6364136223846793005

#: Reference profile increment. It is even, so the recurrence does not meet
#: the full-period conditions (see validate_full_period); the strict profile
#: substitutes an odd increment that does.
REFERENCE_INCREMENT = 54
STRICT_INCREMENT = 1442695040888963407


@dataclass(frozen=True)
class LcgParams:
    """Multiplier and increment of ``x[n+1] = (a*x[n] + c) mod 2**64``."""

    a: int
    c: int

    def __post_init__(self) -> None:
        if not (0 <= self.a <= MASK64 and 0 <= self.c <= MASK64):
            raise ValueError("LCG parameters must be unsigned 64-bit integers")


PAPER_PARAMS = LcgParams(MULTIPLIER, REFERENCE_INCREMENT)
STRICT_PARAMS = LcgParams(MULTIPLIER, STRICT_INCREMENT)


def lcg_step(params: LcgParams, x: int) -> int:
    """Advance the recurrence one step."""
    return (params.a * x + params.c) & MASK64


def truncate_high32(x: int) -> int:
    """Keep the high 32 bits of a 64-bit state word.

    The low bits of a power-of-two-modulus LCG have short periods, so the
    output stage discards them.
    """
    return (x >> 32) & MASK32


@dataclass(frozen=True)
class AdvanceParams:
    """Composite parameters of k steps: ``x[n+k] = (a_k*x[n] + c_k) mod 2**64``."""

    k: int
    a_k: int
    c_k: int


def advance_params(params: LcgParams, k: int) -> AdvanceParams:
    """Fold k steps of the recurrence into one multiply-add, in O(log k).

    Doubling recurrence: starting from the identity (A, C) = (1, 0) and the
    single-step pair (a, c), each bit of k squares the step pair and set bits
    fold it into (A, C). No division appears, so the even-increment profile
    is handled the same as the odd one.
    """
    if k < 0:
        raise ValueError("step count must be non-negative")
    acc_a, acc_c = 1, 0
    cur_a, cur_c = params.a, params.c
    remaining = k
    while remaining:
        if remaining & 1:
            acc_a = (acc_a * cur_a) & MASK64
            acc_c = (acc_c * cur_a + cur_c) & MASK64
        cur_c = (cur_c * (cur_a + 1)) & MASK64
        cur_a = (cur_a * cur_a) & MASK64
        remaining >>= 1
    return AdvanceParams(k, acc_a, acc_c)


def lcg_jump(params: LcgParams, x: int, k: int) -> int:
    """State after k steps from x, computed in O(log k)."""
    adv = advance_params(params, k)
    return (adv.a_k * x + adv.c_k) & MASK64


def validate_full_period(params: LcgParams) -> bool:
    """Full-period test for modulus 2**64.

    For a power-of-two modulus the conditions reduce to: c odd, and a - 1
    divisible by 4. The reference profile (c = 54) fails the parity
    condition; callers that need the full 2**64 period should use
    STRICT_PARAMS.
    """
    return params.c % 2 == 1 and params.a % 4 == 1


@dataclass(frozen=True)
class ScaledLcg:
    """The same recurrence over modulus 2**bits, small enough to walk fully."""

    a: int
    c: int
    bits: int

    def __post_init__(self) -> None:
        if not 4 <= self.bits <= 20:
            raise ValueError("scaled modulus must be 2**b with 4 <= b <= 20")
        mask = (1 << self.bits) - 1
        if not (0 <= self.a <= mask and 0 <= self.c <= mask):
            raise ValueError("scaled parameters must fit the modulus")
        if self.a % 2 == 0:
            # An even multiplier is not a bijection mod 2**b; orbits would
            # have tails and "period" would be ill-defined.
            raise ValueError("scaled multiplier must be odd")

    @property
    def modulus(self) -> int:
        return 1 << self.bits

    def step(self, x: int) -> int:
        return (self.a * x + self.c) & (self.modulus - 1)


def scaled_period(lcg: ScaledLcg, start: int = 0) -> int:
    """Exact cycle length through ``start``, by exhaustive walk.

    With an odd multiplier the map is a permutation, so the walk always
    returns to ``start`` within modulus steps.
    """
    m = lcg.modulus
    if not 0 <= start < m:
        raise ValueError("start state must lie below the modulus")
    x = lcg.step(start)
    n = 1
    while x != start:
        x = lcg.step(x)
        n += 1
        if n > m:  # unreachable for odd a; guards against misuse
            raise RuntimeError("walk exceeded the modulus without returning")
    return n
