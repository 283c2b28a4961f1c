"""Time the hot kernels under numba and under the plain-numpy fallback.

Each backend runs in its own interpreter, since the switch is read at
import time.  Output is CSV on stdout::

    python benchmarks/bench_kernels.py --sizes 10,20,40 --density 0.3

Results from both backends are also compared; a mismatch exits 1.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
import numpy as np
from glmy import RandomSpec, random_digraph
from glmy._accel import backend_name
from glmy import _kernels
from glmy.omega3 import basis_size, pair_dimension_table

sizes, density, seed, repeat = json.loads(sys.argv[1])

def best(fn):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t0)
    return min(times) * 1e3, out

# first call compiles under numba; keep it out of the timings
g0 = random_digraph(RandomSpec(6, 0.5, 0))
basis_size(g0); pair_dimension_table(g0)
_kernels.rref_mod(np.eye(3, dtype=np.int64), 7)

rows = []
rng = np.random.default_rng(seed)
for n in sizes:
    g = random_digraph(RandomSpec(n, density, seed))
    ms, out = best(lambda: basis_size(g))
    rows.append(["basis_size", n, ms, list(out)])
    ms, out = best(lambda: pair_dimension_table(g))
    rows.append(["pair_dimension_table", n, ms, int(out.sum())])
    M = rng.integers(0, 32749, size=(n, 2 * n), dtype=np.int64)
    ms, out = best(lambda: _kernels.rref_mod(M.copy(), 32749)[0])
    rows.append(["rref_mod", n, ms, int(out)])
print(json.dumps({"backend": backend_name(), "rows": rows}))
"""


def run_backend(disable: bool, params) -> dict:
    env = dict(os.environ, GLMY_DISABLE_NUMBA="1" if disable else "0")
    proc = subprocess.run(
        [sys.executable, "-c", WORKER, json.dumps(params)],
        env=env,
        capture_output=True,
        text=True,
        check=True,
    )
    return json.loads(proc.stdout.strip().splitlines()[-1])


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="10,20,40")
    ap.add_argument("--density", type=float, default=0.3)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",")]
    params = [sizes, args.density, args.seed, args.repeat]

    fast = run_backend(False, params)
    slow = run_backend(True, params)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["kernel", "n", f"{fast['backend']}_ms", f"{slow['backend']}_ms", "speedup", "agree"])
    mismatch = False
    for (k, n, t_fast, r_fast), (_, _, t_slow, r_slow) in zip(fast["rows"], slow["rows"]):
        agree = r_fast == r_slow
        mismatch |= not agree
        writer.writerow([k, n, f"{t_fast:.3f}", f"{t_slow:.3f}", f"{t_slow / max(t_fast, 1e-9):.1f}", agree])
    return 1 if mismatch else 0


if __name__ == "__main__":
    sys.exit(main())
