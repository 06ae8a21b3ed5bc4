#!/usr/bin/env python
"""Emit raw interleaved bytes for external test batteries.

PractRand, dieharder, and TestU01 all consume flat byte streams. The
interleaved layout (word 0 of every stream, then word 1, ...) is the same
order a parallel consumer would drain the streams in, so inter-stream
structure becomes visible to a single-sequence battery.

Equivalent shell command:
    python -m rootstream gen --seed 31 --streams 64 --interleave \
        --samples 6400000 --format raw --out feed.u4
    # then e.g.:  RNG_test stdin32 < feed.u4
"""

import hashlib
import tempfile
from pathlib import Path

from rootstream import GeneratorConfig, Plan, new_generator
from rootstream.stats import mini_battery

SEED, STREAMS, TOTAL = 31, 64, 6_400_000

words = new_generator(GeneratorConfig(seed=SEED, n_streams=STREAMS)).interleave(
    list(range(STREAMS)), TOTAL)
payload = words.astype("<u4").tobytes()

out = Path(tempfile.gettempdir()) / "rootstream_feed.u4"
out.write_bytes(payload)
print(f"wrote {len(payload)} bytes to {out}")
print("sha256", hashlib.sha256(payload).hexdigest())

# scheduling must never leak into the bytes: more workers, same digest
threaded = new_generator(GeneratorConfig(
    seed=SEED, n_streams=STREAMS, plan=Plan("independent"))).interleave(
    list(range(STREAMS)), TOTAL, threads=4)
print("4 workers, independent plan, same digest:",
      hashlib.sha256(threaded.astype("<u4").tobytes()).hexdigest()
      == hashlib.sha256(payload).hexdigest())

# quick sanity screen before spending hours in an external battery
print("\ndesk battery on the interleaved feed:")
for verdict in mini_battery(words):
    print(f"  {verdict.name:<22} p/z {verdict.p_or_z:10.4g}  "
          f"{'pass' if verdict.passed else 'FAIL'}")
