"""Command line front end.

Subcommands cover raw output generation, the statistical checks, the two
Monte Carlo demos and a small throughput benchmark. Exit codes: 0 on
success, 1 on a usage error, 2 when a requested assertion fails.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import statistics
import sys
import time
from typing import Sequence

import numpy as np

from .montecarlo import OptionSpec, estimate_pi, mc_option_price
from .output import MODES
from .stats import (
    hwd_proxy,
    mini_battery,
    pairwise_correlation_scan,
    verdicts_to_csv,
    verdicts_to_json,
)
from .streams import GeneratorConfig, MultiStreamRng, Plan, Profile, new_generator

_ENV_SEED = "ROOTSTREAM_SEED"


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # raise instead of argparse's default sys.exit(2); usage errors map to 1
    def error(self, message: str):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _UsageError(message)


def _resolve_seed(args: argparse.Namespace) -> int:
    if args.seed is not None:
        return args.seed
    env = os.environ.get(_ENV_SEED)
    if env is not None:
        try:
            return int(env, 0)
        except ValueError:
            raise _UsageError(f"{_ENV_SEED} is not an integer: {env!r}")
    return 0


def _make_generator(args: argparse.Namespace, n_streams: int | None = None) -> MultiStreamRng:
    config = GeneratorConfig(
        seed=_resolve_seed(args),
        n_streams=n_streams if n_streams is not None else args.streams,
        mode=MODES[args.mode],
        profile=Profile(args.profile),
        plan=Plan(args.plan),
    )
    return new_generator(config)


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--seed",
        type=int,
        default=None,
        help=f"root seed (default: ${_ENV_SEED} if set, else 0)",
    )
    common.add_argument("--streams", type=int, default=1, help="number of streams")
    common.add_argument(
        "--mode", choices=sorted(MODES), default="full", help="output mode"
    )
    common.add_argument(
        "--profile",
        choices=[p.value for p in Profile],
        default="paper",
        help="parameter profile",
    )
    common.add_argument(
        "--plan",
        choices=[p.value for p in Plan],
        default="shared",
        help="execution plan",
    )
    return common


# -- gen ----------------------------------------------------------------------


def _format_words(words: np.ndarray, fmt: str) -> bytes:
    if fmt == "raw":
        return words.astype("<u4").tobytes()
    if fmt == "hex":
        return ("\n".join(f"{int(w):08x}" for w in words) + "\n").encode()
    return ("\n".join(str(int(w)) for w in words) + "\n").encode()


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.samples < 1:
        raise _UsageError("--samples must be positive")
    if args.out_dir is not None:
        rng = _make_generator(args)
        k = rng.config.n_streams
        base, rem = divmod(args.samples, k)
        os.makedirs(args.out_dir, exist_ok=True)
        ext = "u4" if args.format == "raw" else "txt"
        for sid in range(k):
            share = base + (1 if sid < rem else 0)
            payload = _format_words(rng.fill(sid, share), args.format)
            path = os.path.join(args.out_dir, f"stream_{sid:04d}.{ext}")
            with open(path, "wb") as fh:
                fh.write(payload)
        return 0

    rng = _make_generator(args)
    if args.interleave:
        ids = list(range(rng.config.n_streams))
        words = rng.interleave(ids, args.samples, threads=args.threads)
    else:
        words = rng.fill(0, args.samples)
    payload = _format_words(words, args.format)
    if args.out is not None:
        with open(args.out, "wb") as fh:
            fh.write(payload)
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.buffer.flush()
    return 0


# -- corr ---------------------------------------------------------------------


def _cmd_corr(args: argparse.Namespace) -> int:
    rng = _make_generator(args)
    report = pairwise_correlation_scan(
        rng,
        n_pairs=args.pairs,
        n_samples=args.samples,
        kendall_subsample=args.kendall_subsample,
        pair_seed=args.pair_seed,
    )
    sys.stdout.write(report.to_csv() if args.csv else report.to_json() + "\n")

    failures = []
    if args.assert_max_pearson is not None and report.max_abs_pearson > args.assert_max_pearson:
        failures.append(
            f"max |pearson| {report.max_abs_pearson:.6g} > {args.assert_max_pearson:g}"
        )
    if args.assert_min_pearson is not None and report.max_abs_pearson < args.assert_min_pearson:
        failures.append(
            f"max |pearson| {report.max_abs_pearson:.6g} < {args.assert_min_pearson:g}"
        )
    if args.assert_max_spearman is not None and report.max_abs_spearman > args.assert_max_spearman:
        failures.append(
            f"max |spearman| {report.max_abs_spearman:.6g} > {args.assert_max_spearman:g}"
        )
    if args.assert_max_kendall is not None and report.max_abs_kendall > args.assert_max_kendall:
        failures.append(
            f"max |kendall| {report.max_abs_kendall:.6g} > {args.assert_max_kendall:g}"
        )
    for line in failures:
        print(f"assertion failed: {line}", file=sys.stderr)
    return 2 if failures else 0


# -- hwd ----------------------------------------------------------------------


def _cmd_hwd(args: argparse.Namespace) -> int:
    i, j = args.pair
    streams = max(args.streams, i + 1, j + 1)
    rng = _make_generator(args, n_streams=streams)
    verdict = hwd_proxy(rng, (i, j), n=args.samples)
    sys.stdout.write(
        verdicts_to_csv([verdict]) if args.csv else verdicts_to_json([verdict]) + "\n"
    )
    if args.expect is not None:
        expected = args.expect == "pass"
        if verdict.passed != expected:
            print(
                f"assertion failed: expected {args.expect}, verdict "
                f"{'pass' if verdict.passed else 'fail'}",
                file=sys.stderr,
            )
            return 2
    return 0


# -- battery ------------------------------------------------------------------


def _cmd_battery(args: argparse.Namespace) -> int:
    if args.interleave:
        rng = _make_generator(args, n_streams=args.interleave)
        outputs = rng.interleave(list(range(args.interleave)), args.samples)
    else:
        rng = _make_generator(args)
        outputs = rng.fill(0, args.samples)
    verdicts = mini_battery(outputs, alpha=args.alpha)
    sys.stdout.write(
        verdicts_to_csv(verdicts) if args.csv else verdicts_to_json(verdicts) + "\n"
    )
    if args.assert_pass and not all(v.passed for v in verdicts):
        failed = ", ".join(v.name for v in verdicts if not v.passed)
        print(f"assertion failed: battery tests failed: {failed}", file=sys.stderr)
        return 2
    return 0


# -- demos ---------------------------------------------------------------------


def _cmd_pi(args: argparse.Namespace) -> int:
    rng = _make_generator(args)
    est = estimate_pi(rng, args.draws)
    if args.csv:
        sys.stdout.write("draws,hits,estimate,std_error\n")
        sys.stdout.write(f"{est.draws},{est.hits},{est.estimate!r},{est.std_error!r}\n")
    else:
        print(
            json.dumps(
                {
                    "draws": est.draws,
                    "hits": est.hits,
                    "estimate": est.estimate,
                    "std_error": est.std_error,
                },
                indent=2,
            )
        )
    return 0


def _cmd_option(args: argparse.Namespace) -> int:
    spec = OptionSpec(
        s0=args.s0,
        strike=args.strike,
        rate=args.rate,
        sigma=args.sigma,
        maturity=args.maturity,
        paths=args.paths,
    )
    rng = _make_generator(args)
    result = mc_option_price(rng, spec)
    print(
        json.dumps(
            {
                "price": result.price,
                "std_error": result.std_error,
                "paths": result.paths,
            },
            indent=2,
        )
    )
    return 0


# -- bench ---------------------------------------------------------------------


def _cmd_bench(args: argparse.Namespace) -> int:
    try:
        thread_counts = [int(t) for t in args.threads.split(",") if t]
    except ValueError:
        raise _UsageError(f"--threads expects a comma list of integers: {args.threads!r}")
    if not thread_counts or any(t < 1 for t in thread_counts):
        raise _UsageError("--threads needs positive integers")

    ids = list(range(args.streams))

    def one_fill(plan: str, threads: int) -> np.ndarray:
        cfg = GeneratorConfig(
            seed=_resolve_seed(args),
            n_streams=args.streams,
            mode=MODES[args.mode],
            profile=Profile(args.profile),
            plan=Plan(plan),
        )
        return new_generator(cfg).fill_matrix(ids, args.samples, threads=threads)

    # Identical bytes across every plan and worker count, before any timing.
    digests = {
        hashlib.sha256(one_fill(plan.value, t).tobytes()).hexdigest()
        for plan in Plan
        for t in thread_counts
    }
    if len(digests) != 1:
        print("assertion failed: output differs across plans or thread counts", file=sys.stderr)
        return 2

    results = []
    total = args.streams * args.samples
    for t in thread_counts:
        times = []
        for _ in range(args.reps):
            t0 = time.perf_counter()
            one_fill(args.plan, t)
            times.append(time.perf_counter() - t0)
        results.append(
            {"threads": t, "median_samples_per_s": total / statistics.median(times)}
        )
    print(
        json.dumps(
            {
                "streams": args.streams,
                "samples": args.samples,
                "plan": args.plan,
                "determinism_sha256": digests.pop(),
                "results": results,
            },
            indent=2,
        )
    )
    return 0


# -- parser ---------------------------------------------------------------------


def build_parser() -> _Parser:
    common = _common_parser()
    parser = _Parser(prog="rootstream", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", parents=[common], help="emit 32-bit outputs")
    p.add_argument("--samples", type=int, required=True, help="total words to emit")
    p.add_argument("--format", choices=["raw", "hex", "dec"], default="raw")
    group = p.add_mutually_exclusive_group()
    group.add_argument(
        "--interleave",
        action="store_true",
        help="round-robin the configured streams into one sequence",
    )
    group.add_argument(
        "--out-dir", default=None, help="write one file per stream into this directory"
    )
    p.add_argument("--out", default=None, help="output file (default: stdout)")
    p.add_argument("--threads", type=int, default=1, help="worker threads")
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("corr", parents=[common], help="pairwise correlation scan")
    p.add_argument("--pairs", type=int, default=100)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--kendall-subsample", type=int, default=10_000)
    p.add_argument("--pair-seed", type=int, default=20259)
    p.add_argument("--csv", action="store_true", help="CSV instead of JSON")
    p.add_argument("--assert-max-pearson", type=float, default=None, metavar="X")
    p.add_argument("--assert-min-pearson", type=float, default=None, metavar="X")
    p.add_argument("--assert-max-spearman", type=float, default=None, metavar="X")
    p.add_argument("--assert-max-kendall", type=float, default=None, metavar="X")
    p.set_defaults(func=_cmd_corr, streams=16)

    p = sub.add_parser("hwd", parents=[common], help="Hamming-weight dependency proxy")
    p.add_argument("--pair", type=int, nargs=2, required=True, metavar=("I", "J"))
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--csv", action="store_true")
    p.add_argument(
        "--assert",
        dest="expect",
        choices=["pass", "fail"],
        default=None,
        help="exit 2 unless the verdict matches",
    )
    p.set_defaults(func=_cmd_hwd)

    p = sub.add_parser("battery", parents=[common], help="mini statistical battery")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--alpha", type=float, default=0.001)
    p.add_argument(
        "--interleave",
        type=int,
        default=0,
        metavar="K",
        help="test a round-robin interleave of K streams instead of stream 0",
    )
    p.add_argument("--csv", action="store_true")
    p.add_argument("--assert-pass", action="store_true", help="exit 2 on any failure")
    p.set_defaults(func=_cmd_battery)

    p = sub.add_parser("pi", parents=[common], help="Monte Carlo pi demo")
    p.add_argument("--draws", type=int, default=1_000_000)
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=_cmd_pi)

    p = sub.add_parser("option", parents=[common], help="European call pricing demo")
    p.add_argument("--s0", type=float, default=100.0)
    p.add_argument("--strike", type=float, default=100.0)
    p.add_argument("--rate", type=float, default=0.05)
    p.add_argument("--sigma", type=float, default=0.2)
    p.add_argument("--maturity", type=float, default=1.0)
    p.add_argument("--paths", type=int, default=100_000)
    p.set_defaults(func=_cmd_option)

    p = sub.add_parser("bench", parents=[common], help="fill throughput benchmark")
    p.add_argument("--samples", type=int, default=100_000, help="words per stream")
    p.add_argument("--threads", default="1", help="comma list of worker counts")
    p.add_argument("--reps", type=int, default=10)
    p.set_defaults(func=_cmd_bench, streams=16)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError:
        return 1
    except (ValueError, OSError) as exc:
        print(f"rootstream: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
