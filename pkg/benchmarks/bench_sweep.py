#!/usr/bin/env python3
"""Benchmark the counting kernel: numba-compiled versus pure Python.

The kernel path is fixed at import time by NAPLESPF_DISABLE_NUMBA, so each
path runs in its own subprocess; this driver spawns both, checks they agree,
and prints a combined JSON report.

    python3 benchmarks/bench_sweep.py --length 7 --window 2 --repeats 3
"""

import argparse
import json
import os
import subprocess
import sys
import time


def run_worker(n: int, k: int, repeats: int) -> dict:
    import numpy as np

    from naplespf import _kernels

    total = n**n
    warm = np.zeros(_kernels.N_PREDICATES, np.int64)
    _kernels.count_range(n, k, 0, min(total, 1000), warm)  # compile / warm up
    times = []
    counts = None
    for _ in range(repeats):
        out = np.zeros(_kernels.N_PREDICATES, np.int64)
        t0 = time.perf_counter()
        _kernels.count_range(n, k, 0, total, out)
        times.append(time.perf_counter() - t0)
        counts = [int(x) for x in out]
    return {
        "numba": _kernels.USE_NUMBA,
        "times": times,
        "min": min(times),
        "counts": counts,
    }


def spawn(n: int, k: int, repeats: int, disable_numba: bool) -> dict:
    env = dict(os.environ)
    env["NAPLESPF_DISABLE_NUMBA"] = "1" if disable_numba else "0"
    proc = subprocess.run(
        [sys.executable, __file__, "--worker", "--length", str(n),
         "--window", str(k), "--repeats", str(repeats)],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    return json.loads(proc.stdout)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--length", "-n", type=int, default=6, help="street length")
    parser.add_argument("--window", "-k", type=int, default=2, help="backward window")
    parser.add_argument("--repeats", type=int, default=3)
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()

    if args.worker:
        print(json.dumps(run_worker(args.length, args.window, args.repeats)))
        return

    jit = spawn(args.length, args.window, args.repeats, disable_numba=False)
    pure = spawn(args.length, args.window, args.repeats, disable_numba=True)
    if jit["counts"] != pure["counts"]:
        raise SystemExit(f"paths disagree: {jit['counts']} vs {pure['counts']}")
    report = {
        "n": args.length,
        "k": args.window,
        "total_preferences": args.length**args.length,
        "repeats": args.repeats,
        "numba": {"available": jit["numba"], "min_s": jit["min"], "times_s": jit["times"]},
        "pure_python": {"min_s": pure["min"], "times_s": pure["times"]},
        "speedup": pure["min"] / jit["min"] if jit["min"] > 0 else None,
        "counts": dict(zip(
            ("parking_function", "k_naples", "complete",
             "complete_k_naples", "perm_invariant"),
            jit["counts"],
        )),
    }
    print(json.dumps(report, indent=2))


if __name__ == "__main__":
    main()
