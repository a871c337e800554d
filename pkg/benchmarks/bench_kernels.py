"""Compare the compiled and pure-Python elimination kernels.

Times exact and modular rank of full Leibniz coboundary matrices of h_3
(adjoint coefficients) under both backends and checks the ranks agree.

    python benchmarks/bench_kernels.py [--degrees 1 2 3 4] [--repeat 3]
"""
from __future__ import annotations

import argparse
import json
import time

from leibniz_cohomology.cochain_complexes import LeibnizComplex
from leibniz_cohomology.exact_linalg import RankConfig, _backend, rank
from leibniz_cohomology.lie_core import build_h_n, make_module


def best_of(fn, repeat: int) -> tuple[float, int]:
    times, value = [], None
    for _ in range(repeat):
        t = time.perf_counter()
        value = fn()
        times.append(time.perf_counter() - t)
    return min(times), value


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=3)
    ap.add_argument("--degrees", type=int, nargs="+", default=[1, 2, 3, 4])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args(argv)

    alg = build_h_n(args.n)
    cx = LeibnizComplex(alg, make_module(alg, "adjoint"))
    cfg = RankConfig(min_primes=2, threads=1)
    rows = []
    for k in args.degrees:
        m = cx.differential(k)
        for mode in ("exact", "modular"):
            result = {}
            for backend in ("python", "cython"):
                _backend.use(backend)
                result[backend] = best_of(lambda: rank(m, mode, cfg).rank, args.repeat)
            (tp, rp), (tc, rc) = result["python"], result["cython"]
            if rp != rc:
                raise SystemExit(f"rank mismatch at degree {k} ({mode}): {rp} vs {rc}")
            rows.append({"degree": k, "shape": list(m.shape), "nnz": m.nnz, "mode": mode, "rank": rc,
                         "python_s": round(tp, 4), "cython_s": round(tc, 4),
                         "speedup": round(tp / tc, 1) if tc else None})
    if args.json:
        print(json.dumps(rows, indent=2))
    else:
        print(f"{'deg':>3} {'shape':>14} {'mode':>8} {'rank':>6} {'python s':>10} {'cython s':>10} {'x':>6}")
        for r in rows:
            shape = "x".join(map(str, r["shape"]))
            print(f"{r['degree']:>3} {shape:>14} {r['mode']:>8} {r['rank']:>6} "
                  f"{r['python_s']:>10.4f} {r['cython_s']:>10.4f} {r['speedup']:>6}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
