"""Independent reference implementations the tests check against.

Everything here is deliberately written the slow, obvious way: python
integers with explicit moduli, bit lists, quadratic pair loops, exact
rational arithmetic. None of it shares code paths or algebraic shortcuts
with the package, so agreement is evidence rather than tautology.
"""

import math
from fractions import Fraction

from scipy.stats import norm

# -- linear congruential references -------------------------------------------


def lcg_orbit(a: int, c: int, m: int, x0: int, n: int) -> list[int]:
    """x0 and the next n-1 states of x -> (a*x + c) mod m."""
    out = [x0 % m]
    for _ in range(n - 1):
        out.append((a * out[-1] + c) % m)
    return out


def lcg_after(a: int, c: int, m: int, x0: int, k: int) -> int:
    x = x0 % m
    for _ in range(k):
        x = (a * x + c) % m
    return x


# -- xorshift128 reference ------------------------------------------------------

M32 = 2**32


def xorshift_orbit(state: tuple[int, int, int, int], n: int) -> tuple[tuple, list[int]]:
    """Final state and the n outputs of xorshift128 with shifts (11, 8, 19).

    Transliterated from the published algorithm: t = x ^ (x << 11);
    rotate the pipeline; w = (w ^ (w >> 19)) ^ (t ^ (t >> 8)).
    """
    x, y, z, w = state
    out = []
    for _ in range(n):
        t = (x ^ (x << 11)) % M32
        x, y, z = y, z, w
        w = (w ^ (w >> 19)) ^ (t ^ (t >> 8))
        out.append(w)
    return (x, y, z, w), out


# -- output permutation, bit by bit ---------------------------------------------


def xsh_rr_bits(w: int) -> int:
    """The 64->32 fold-and-rotate permutation as explicit bit shuffling."""
    b = [(w >> i) & 1 for i in range(64)]
    rot = sum(b[59 + i] << i for i in range(5))
    xored = [((b[i + 18] if i + 18 < 64 else 0) ^ b[i]) for i in range(64)]
    folded = xored[27:59]  # 32 bits, least significant first
    rotated = [folded[(i + rot) % 32] for i in range(32)]
    return sum(rotated[i] << i for i in range(32))


# -- correlation references -------------------------------------------------------


def pearson_exact(xs, ys) -> float:
    """Product-moment correlation with exact integer/rational sums.

    Inputs must be ints or Fractions; the only rounding happens in the
    final square root.
    """
    n = len(xs)
    sx, sy = sum(xs), sum(ys)
    sxy = sum(a * b for a, b in zip(xs, ys))
    sxx = sum(a * a for a in xs)
    syy = sum(b * b for b in ys)
    num = n * sxy - sx * sy
    vx = n * sxx - sx * sx
    vy = n * syy - sy * sy
    return num / math.sqrt(vx * vy)


def ranks_avg(xs) -> list[Fraction]:
    """1-based ranks; tied values share the exact mean of their positions."""
    order = sorted(range(len(xs)), key=lambda i: xs[i])
    ranks: list[Fraction] = [Fraction(0)] * len(xs)
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and xs[order[j + 1]] == xs[order[i]]:
            j += 1
        shared = Fraction(i + j, 2) + 1
        for t in range(i, j + 1):
            ranks[order[t]] = shared
        i = j + 1
    return ranks


def spearman_exact(xs, ys) -> float:
    return pearson_exact(ranks_avg(xs), ranks_avg(ys))


def kendall_tau_b(xs, ys) -> float:
    """Tie-corrected Kendall correlation by the quadratic pair count."""
    n = len(xs)
    conc = disc = tied_x = tied_y = 0
    for i in range(n):
        for j in range(i + 1, n):
            dx = (xs[i] > xs[j]) - (xs[i] < xs[j])
            dy = (ys[i] > ys[j]) - (ys[i] < ys[j])
            if dx == 0:
                tied_x += 1
            if dy == 0:
                tied_y += 1
            if dx != 0 and dy != 0:
                if dx == dy:
                    conc += 1
                else:
                    disc += 1
    n0 = n * (n - 1) // 2
    return (conc - disc) / math.sqrt((n0 - tied_x) * (n0 - tied_y))


# -- Black-Scholes closed form ------------------------------------------------------


def black_scholes_call(s0: float, k: float, r: float, sigma: float, t: float) -> float:
    if sigma * math.sqrt(t) == 0.0:
        return max(s0 - k * math.exp(-r * t), 0.0)
    d1 = (math.log(s0 / k) + (r + 0.5 * sigma**2) * t) / (sigma * math.sqrt(t))
    d2 = d1 - sigma * math.sqrt(t)
    return s0 * norm.cdf(d1) - k * math.exp(-r * t) * norm.cdf(d2)


# -- bit sequence helpers --------------------------------------------------------------


def word_bits_lsb_first(words) -> list[int]:
    """Bit sequence of 32-bit words, bit 0 of word 0 first."""
    bits = []
    for w in words:
        v = int(w)
        bits.extend((v >> i) & 1 for i in range(32))
    return bits


def runs_count(bits) -> int:
    runs = 1
    for prev, cur in zip(bits, bits[1:]):
        if prev != cur:
            runs += 1
    return runs
