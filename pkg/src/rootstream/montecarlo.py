"""Monte Carlo demo applications driven by the multi-stream generator.

Two classic estimators exercise the library end to end: unit-circle
rejection for pi and a lognormal terminal-price average for a European
call. Work is partitioned contiguously across streams so a run with k
streams is reproducible regardless of how the streams are scheduled.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

_TWO_NEG32 = 2.0**-32


def _partition(total: int, parts: int) -> list[int]:
    base, rem = divmod(total, parts)
    return [base + (1 if i < rem else 0) for i in range(parts)]


# -- pi -----------------------------------------------------------------------


@dataclass(frozen=True)
class PiEstimate:
    draws: int
    hits: int
    estimate: float
    std_error: float


def estimate_pi(rng, draws: int, stream_ids: Sequence[int] | None = None) -> PiEstimate:
    """Estimate pi by uniform sampling of the unit square.

    Each draw consumes two 32-bit words (x then y) from one stream; the
    draw budget is split contiguously across ``stream_ids`` (default: all
    configured streams). The standard error is the binomial delta-method
    value 4*sqrt(p*(1-p)/draws).
    """
    if draws < 1:
        raise ValueError("need at least one draw")
    if stream_ids is None:
        stream_ids = list(range(rng.config.n_streams))
    if not stream_ids:
        raise ValueError("need at least one stream")
    hits = 0
    for sid, share in zip(stream_ids, _partition(draws, len(stream_ids))):
        if share == 0:
            continue
        words = rng.fill(sid, 2 * share)
        x = words[0::2] * _TWO_NEG32
        y = words[1::2] * _TWO_NEG32
        hits += int(np.count_nonzero(x * x + y * y <= 1.0))
    p_hat = hits / draws
    return PiEstimate(
        draws=draws,
        hits=hits,
        estimate=4.0 * p_hat,
        std_error=4.0 * math.sqrt(p_hat * (1.0 - p_hat) / draws),
    )


# -- gaussian sampling ---------------------------------------------------------


def gaussian_pair(rng, stream_id: int) -> tuple[float, float]:
    """One Box-Muller pair from two consecutive 32-bit words.

    u1 maps to (0, 1] by replacing the word 0 with 1 before scaling by
    2**-32, keeping log(u1) finite; u2 scales to [0, 1).
    """
    w1 = rng.next_u32(stream_id)
    w2 = rng.next_u32(stream_id)
    u1 = max(w1, 1) * _TWO_NEG32
    u2 = w2 * _TWO_NEG32
    r = math.sqrt(-2.0 * math.log(u1))
    theta = 2.0 * math.pi * u2
    return r * math.cos(theta), r * math.sin(theta)


def _gaussian_block(words: np.ndarray) -> np.ndarray:
    """Vectorized Box-Muller; words come in (u1, u2) pairs, output interleaved."""
    u1 = np.maximum(words[0::2], 1) * _TWO_NEG32
    u2 = words[1::2] * _TWO_NEG32
    r = np.sqrt(-2.0 * np.log(u1))
    theta = (2.0 * math.pi) * u2
    z = np.empty(2 * u1.size, dtype=np.float64)
    z[0::2] = r * np.cos(theta)
    z[1::2] = r * np.sin(theta)
    return z


# -- European call option ------------------------------------------------------


@dataclass(frozen=True)
class OptionSpec:
    """European call under geometric Brownian motion."""

    s0: float
    strike: float
    rate: float
    sigma: float
    maturity: float
    paths: int

    def __post_init__(self) -> None:
        if self.s0 <= 0.0:
            raise ValueError("spot must be positive")
        if self.strike < 0.0:
            raise ValueError("strike must be nonnegative")
        if self.sigma < 0.0:
            raise ValueError("volatility must be nonnegative")
        if self.maturity < 0.0:
            raise ValueError("maturity must be nonnegative")
        if self.paths < 1:
            raise ValueError("need at least one path")


@dataclass(frozen=True)
class OptionPrice:
    price: float
    std_error: float
    paths: int


def mc_option_price(
    rng, spec: OptionSpec, stream_ids: Sequence[int] | None = None
) -> OptionPrice:
    """Discounted mean call payoff over simulated terminal prices.

    Terminal price per path is s0*exp((r - sigma^2/2)*T + sigma*sqrt(T)*Z)
    with Z standard normal via Box-Muller pairs. With sigma*sqrt(T) == 0 the
    payoff is deterministic, so the exact discounted value is returned and
    no randomness is consumed.
    """
    drift = (spec.rate - 0.5 * spec.sigma**2) * spec.maturity
    vol = spec.sigma * math.sqrt(spec.maturity)
    discount = math.exp(-spec.rate * spec.maturity)
    if vol == 0.0:
        payoff = max(spec.s0 * math.exp(drift) - spec.strike, 0.0)
        return OptionPrice(price=discount * payoff, std_error=0.0, paths=spec.paths)
    if spec.paths < 2:
        raise ValueError("need at least two paths to estimate a standard error")
    if stream_ids is None:
        stream_ids = list(range(rng.config.n_streams))
    if not stream_ids:
        raise ValueError("need at least one stream")

    total = 0.0
    total_sq = 0.0
    for sid, share in zip(stream_ids, _partition(spec.paths, len(stream_ids))):
        if share == 0:
            continue
        pairs = (share + 1) // 2
        z = _gaussian_block(rng.fill(sid, 2 * pairs))[:share]
        terminal = spec.s0 * np.exp(drift + vol * z)
        payoff = np.maximum(terminal - spec.strike, 0.0)
        total += float(payoff.sum())
        total_sq += float(np.dot(payoff, payoff))

    m = spec.paths
    mean = total / m
    var = (total_sq - m * mean * mean) / (m - 1)
    var = max(var, 0.0)  # guard the subtraction against rounding
    return OptionPrice(
        price=discount * mean,
        std_error=discount * math.sqrt(var / m),
        paths=m,
    )
