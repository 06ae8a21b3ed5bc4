"""Statistical evaluation: cross-stream correlation, weight bias, battery.

The correlation scan quantifies dependence between aligned streams with
three coefficients (Pearson on values, Spearman on average ranks, Kendall
tau-b on a subsample). The Hamming-weight proxy and the four-test mini
battery are cheap detectors for the failure shapes this construction must
avoid: near-identical leaves and biased output words.
"""

from __future__ import annotations

import csv
import io
import json
import math
import random
from dataclasses import asdict, dataclass, field
from typing import TYPE_CHECKING, Sequence

import numpy as np
from scipy import stats as sps

if TYPE_CHECKING:  # pragma: no cover
    from .streams import MultiStreamRng

# -- correlation coefficients ----------------------------------------------


def _as_float_pair(x, y) -> tuple[np.ndarray, np.ndarray]:
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    if xa.ndim != 1 or ya.ndim != 1:
        raise ValueError("inputs must be one-dimensional")
    if xa.shape != ya.shape:
        raise ValueError("inputs must have equal length")
    if xa.size < 2:
        raise ValueError("need at least two samples")
    return xa, ya


def pearson(x, y) -> float:
    """Sample Pearson correlation; constant input is an error."""
    xa, ya = _as_float_pair(x, y)
    dx = xa - xa.mean()
    dy = ya - ya.mean()
    sx = float(np.dot(dx, dx))
    sy = float(np.dot(dy, dy))
    if sx == 0.0 or sy == 0.0:
        raise ValueError("correlation is undefined for constant input")
    return float(np.dot(dx, dy)) / math.sqrt(sx * sy)


def spearman(x, y) -> float:
    """Pearson correlation of average ranks (ties share their mean rank)."""
    xa, ya = _as_float_pair(x, y)
    return pearson(sps.rankdata(xa), sps.rankdata(ya))


def kendall(x, y) -> float:
    """Kendall tau-b (tie-corrected)."""
    xa, ya = _as_float_pair(x, y)
    if np.all(xa == xa[0]) or np.all(ya == ya[0]):
        raise ValueError("correlation is undefined for constant input")
    return float(sps.kendalltau(xa, ya).statistic)


# -- pairwise scan -----------------------------------------------------------


@dataclass(frozen=True)
class PairCorrelation:
    stream_i: int
    stream_j: int
    pearson: float
    spearman: float
    kendall: float


@dataclass(frozen=True)
class CorrelationReport:
    n_pairs: int
    n_samples: int
    kendall_subsample: int
    max_abs_pearson: float
    max_abs_spearman: float
    max_abs_kendall: float
    pairs: tuple[PairCorrelation, ...] = field(repr=False)

    def to_json(self) -> str:
        d = asdict(self)
        d["pairs"] = [asdict(p) for p in self.pairs]
        return json.dumps(d, indent=2)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["stream_i", "stream_j", "pearson", "spearman", "kendall"])
        for p in self.pairs:
            writer.writerow([p.stream_i, p.stream_j, p.pearson, p.spearman, p.kendall])
        return buf.getvalue()


def pairwise_correlation_scan(
    rng: "MultiStreamRng",
    n_pairs: int = 100,
    n_samples: int = 1_000_000,
    kendall_subsample: int = 10_000,
    pair_seed: int = 20259,
) -> CorrelationReport:
    """Correlations over random distinct stream pairs on aligned outputs.

    Consumes ``n_samples`` outputs from every stream that at least one
    sampled pair touches. Pair choice is reproducible via ``pair_seed``.
    Kendall runs on an evenly strided subsample to stay subquadratic.
    """
    k = rng.config.n_streams
    if k < 2:
        raise ValueError("need at least two streams to scan pairs")
    if n_pairs < 1:
        raise ValueError("need at least one pair")
    all_pairs = k * (k - 1) // 2
    rnd = random.Random(pair_seed)
    chosen: set[tuple[int, int]] = set()
    if n_pairs >= all_pairs:
        chosen = {(i, j) for i in range(k) for j in range(i + 1, k)}
    else:
        while len(chosen) < n_pairs:
            i = rnd.randrange(k)
            j = rnd.randrange(k)
            if i != j:
                chosen.add((min(i, j), max(i, j)))
    pairs = sorted(chosen)

    touched = sorted({s for p in pairs for s in p})
    samples = dict(zip(touched, rng.fill_matrix(touched, n_samples)))
    ranks = {s: sps.rankdata(samples[s]) for s in touched}
    step = max(1, n_samples // kendall_subsample)
    sub_len = len(range(0, n_samples, step)[:kendall_subsample])

    rows = []
    for i, j in pairs:
        xi, xj = samples[i], samples[j]
        sub_i = xi[::step][:kendall_subsample]
        sub_j = xj[::step][:kendall_subsample]
        rows.append(
            PairCorrelation(
                stream_i=i,
                stream_j=j,
                pearson=pearson(xi, xj),
                spearman=pearson(ranks[i], ranks[j]),
                kendall=kendall(sub_i, sub_j),
            )
        )
    return CorrelationReport(
        n_pairs=len(rows),
        n_samples=n_samples,
        kendall_subsample=sub_len,
        max_abs_pearson=max(abs(r.pearson) for r in rows),
        max_abs_spearman=max(abs(r.spearman) for r in rows),
        max_abs_kendall=max(abs(r.kendall) for r in rows),
        pairs=tuple(rows),
    )


# -- verdicts ----------------------------------------------------------------


@dataclass(frozen=True)
class TestVerdict:
    """One statistical decision.

    ``p_or_z`` is a p-value for the battery tests and a z-equivalent
    magnitude for fixed-threshold rules; ``alpha`` is None for the latter.
    """

    name: str
    statistic: float
    p_or_z: float
    passed: bool
    alpha: float | None


def verdicts_to_json(verdicts: Sequence[TestVerdict]) -> str:
    return json.dumps([asdict(v) for v in verdicts], indent=2)


def verdicts_to_csv(verdicts: Sequence[TestVerdict]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(["name", "statistic", "p_or_z", "passed", "alpha"])
    for v in verdicts:
        writer.writerow([v.name, v.statistic, v.p_or_z, v.passed, v.alpha])
    return buf.getvalue()


# -- Hamming-weight dependency proxy -----------------------------------------

#: A uniform 32-bit word has Hamming weight mean 16 and variance 8.
_HW_MEAN = 16.0
_HW_VAR = 8.0
_HW_Z_LIMIT = 4.0
_HW_RHO_LIMIT_SCALE = 5.0  # limit is 5 / sqrt(n)


def hwd_proxy(rng, pair: tuple[int, int], n: int = 1_000_000) -> TestVerdict:
    """Hamming-weight dependency check on one stream pair.

    Per-stream mean weights must sit within 4 standard errors of 16, and
    the Pearson correlation of the two weight sequences must stay below
    5/sqrt(n). ``statistic`` is the largest threshold-violation ratio
    (above 1 fails); ``p_or_z`` the largest z-equivalent magnitude.
    ``rng`` needs only a ``fill(stream_id, n)`` method.
    """
    if n < 10_000:
        raise ValueError("need at least 10**4 samples per stream")
    i, j = pair
    if i == j:
        raise ValueError("pair must name two distinct streams")
    hw_i = np.bitwise_count(rng.fill(i, n)).astype(np.float64)
    hw_j = np.bitwise_count(rng.fill(j, n)).astype(np.float64)
    se = math.sqrt(_HW_VAR / n)
    z_i = (float(hw_i.mean()) - _HW_MEAN) / se
    z_j = (float(hw_j.mean()) - _HW_MEAN) / se
    if hw_i.var() == 0.0 or hw_j.var() == 0.0:
        # Degenerate weight sequence: correlation undefined, mean z decides.
        rho = math.inf
        rho_z = math.inf
    else:
        rho = pearson(hw_i, hw_j)
        rho_z = abs(rho) * math.sqrt(n)
    rho_limit = _HW_RHO_LIMIT_SCALE / math.sqrt(n)
    severity = max(
        abs(z_i) / _HW_Z_LIMIT, abs(z_j) / _HW_Z_LIMIT, abs(rho) / rho_limit
    )
    return TestVerdict(
        name="hwd_proxy",
        statistic=severity,
        p_or_z=max(abs(z_i), abs(z_j), rho_z),
        passed=severity <= 1.0,
        alpha=None,
    )


# -- mini battery -------------------------------------------------------------

# Byte-level tables: bit order is little-endian bytes of each u32 word,
# bits LSB first within a byte.
_BYTE_VALUES = np.arange(256, dtype=np.uint8)
_BYTE_POPCOUNT = np.bitwise_count(_BYTE_VALUES).astype(np.int64)
_BYTE_TRANSITIONS = np.bitwise_count(
    (_BYTE_VALUES ^ (_BYTE_VALUES >> 1)) & np.uint8(0x7F)
).astype(np.int64)
_BYTE_FIRST_BIT = (_BYTE_VALUES & 1).astype(np.uint8)
_BYTE_LAST_BIT = (_BYTE_VALUES >> 7).astype(np.uint8)


def _two_sided_p(z: float) -> float:
    return math.erfc(abs(z) / math.sqrt(2.0))


def mini_battery(outputs: np.ndarray, alpha: float = 0.001) -> list[TestVerdict]:
    """Four quick uniformity tests on a u32 output sequence.

    monobit (bit balance), byte_frequency (chi-square over 256 byte bins),
    runs (Wald-Wolfowitz on the bit sequence) and lag1_serial (lag-1
    autocorrelation of the words). Each verdict passes when its p-value
    meets the Bonferroni-adjusted level alpha/4.
    """
    arr = np.ascontiguousarray(np.asarray(outputs, dtype=np.uint32))
    n = arr.size
    if n < 100_000:
        raise ValueError("need at least 10**5 outputs")
    level = alpha / 4.0

    def mk(name: str, stat: float, p: float) -> TestVerdict:
        return TestVerdict(name, stat, p, p >= level, alpha)

    byte_view = arr.view(np.uint8)
    counts = np.bincount(byte_view, minlength=256).astype(np.int64)
    n_bytes = int(counts.sum())
    n_bits = 8 * n_bytes

    # monobit
    ones = int(np.dot(counts, _BYTE_POPCOUNT))
    z_mono = (2.0 * ones - n_bits) / math.sqrt(n_bits)
    verdicts = [mk("monobit", z_mono, _two_sided_p(z_mono))]

    # byte frequency
    expected = n_bytes / 256.0
    chi2 = float(((counts - expected) ** 2 / expected).sum())
    verdicts.append(mk("byte_frequency", chi2, float(sps.chi2.sf(chi2, 255))))

    # runs
    n1, n0 = ones, n_bits - ones
    if n1 == 0 or n0 == 0:
        verdicts.append(mk("runs", float("inf"), 0.0))
    else:
        internal = int(np.dot(counts, _BYTE_TRANSITIONS))
        boundary = int(
            np.count_nonzero(
                _BYTE_LAST_BIT[byte_view[:-1]] != _BYTE_FIRST_BIT[byte_view[1:]]
            )
        )
        runs = 1 + internal + boundary
        mu = 1.0 + 2.0 * n1 * n0 / n_bits
        var = (
            2.0 * n1 * n0 * (2.0 * n1 * n0 - n_bits)
            / (n_bits**2 * (n_bits - 1.0))
        )
        z_runs = (runs - mu) / math.sqrt(var)
        verdicts.append(mk("runs", z_runs, _two_sided_p(z_runs)))

    # lag-1 serial correlation
    vals = arr.astype(np.float64)
    if np.all(vals == vals[0]):
        verdicts.append(mk("lag1_serial", float("inf"), 0.0))
    else:
        r = pearson(vals[:-1], vals[1:])
        z_ser = r * math.sqrt(n - 1)
        verdicts.append(mk("lag1_serial", r, _two_sided_p(z_ser)))
    return verdicts
