"""Compare the numba kernels against the pure-numpy fallback.

Kernel timings call both variants in-process (both are always built).
The end-to-end optimizer timing runs in child processes, one with
CHAOSWOLF_DISABLE_NUMBA=1, because the backend is picked at import time.

    python3 bench/bench_backends.py
    python3 bench/bench_backends.py --agents 50 --iters 1000 --repeat 5
"""
import argparse
import json
import os
import subprocess
import sys
import time

import numpy as np


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def bench_kernels(args):
    from chaoswolf import _kernels as K
    from chaoswolf.chaos import ChaoticMap, MapKind

    rows = []
    out = np.empty(args.fill)
    for kind in (MapKind.LOGISTIC, MapKind.SINUSOIDAL, MapKind.CHEBYSHEV):
        cmap = ChaoticMap(kind)
        lo, hi = cmap.native_range
        x0 = lo + 0.3 * (hi - lo)
        for name, fn in (("numba", K.fill_nb), ("numpy", K.fill_py)):
            fn(cmap.code, x0, 0, cmap.param, False, cmap.fixed_points, out[:8])  # compile
            t = best_of(lambda: fn(cmap.code, x0, 0, cmap.param, False, cmap.fixed_points, out), args.repeat)
            rows.append((f"fill {kind.label} x{args.fill}", name, t))

    rng = np.random.default_rng(0)
    n, dim = args.agents, args.dim
    X = rng.uniform(-5, 5, (n, dim))
    leaders = rng.uniform(-5, 5, (3, dim))
    A = rng.uniform(-2, 2, (n, 3, dim))
    C = rng.uniform(0, 2, (n, 3, dim))
    lower, upper = np.full(dim, -5.0), np.full(dim, 5.0)
    loops = 200
    for name, fn in (("numba", K.update_positions_nb), ("numpy", K.update_positions_py)):
        fn(X, leaders, A, C, lower, upper)

        def body(fn=fn):
            for _ in range(loops):
                fn(X, leaders, A, C, lower, upper)

        rows.append((f"update_positions {n}x{dim} x{loops}", name, best_of(body, args.repeat)))
    return rows


def run_once(args):
    from chaoswolf import _accel
    from chaoswolf.benchmarks import get_benchmark
    from chaoswolf.gwo import GwoConfig, GwoVariant, run

    obj = get_benchmark("f3").objective
    variant = GwoVariant.chaotic_both_with("sinusoidal", "logistic").fitted(args.iters)
    cfg = GwoConfig(args.agents, args.iters, variant, 0)
    run(GwoConfig(args.agents, 60, variant.fitted(60), 0), obj)  # compile / warm up
    t = best_of(lambda: run(cfg, obj), args.repeat)
    print(json.dumps({"backend": _accel.backend(), "seconds": t}))


def bench_end_to_end(args):
    rows = []
    for disable in ("0", "1"):
        env = dict(os.environ, CHAOSWOLF_DISABLE_NUMBA=disable)
        cmd = [sys.executable, __file__, "--worker", "--agents", str(args.agents), "--iters", str(args.iters),
               "--repeat", str(args.repeat)]
        proc = subprocess.run(cmd, env=env, capture_output=True, text=True, check=True)
        doc = json.loads(proc.stdout.strip().splitlines()[-1])
        rows.append((f"gwo run f3 {args.agents}x{args.iters} chaotic-both", doc["backend"], doc["seconds"]))
    return rows


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--agents", type=int, default=30)
    p.add_argument("--dim", type=int, default=30)
    p.add_argument("--iters", type=int, default=500)
    p.add_argument("--fill", type=int, default=200000, help="iterates per chaotic fill")
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = p.parse_args(argv)
    if args.worker:
        run_once(args)
        return 0

    rows = bench_kernels(args) + bench_end_to_end(args)
    by_case = {}
    for case, backend, t in rows:
        by_case.setdefault(case, {})[backend] = t
    width = max(len(c) for c in by_case)
    print(f"{'case':<{width}}  {'numba s':>10}  {'numpy s':>10}  {'speedup':>8}")
    for case, t in by_case.items():
        speedup = t["numpy"] / t["numba"] if t.get("numba") else float("nan")
        print(f"{case:<{width}}  {t['numba']:>10.4f}  {t['numpy']:>10.4f}  {speedup:>7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
