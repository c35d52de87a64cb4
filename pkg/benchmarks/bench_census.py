"""Compare the compiled and pure-Python HN census kernels.

Usage: python3 benchmarks/bench_census.py [--repeat N]
"""
from __future__ import annotations

import argparse
import time

from quivermoduli._kernels import BACKENDS, prepare, run_census
from quivermoduli.quiver import standard_quiver

CASES = [
    ("kronecker:2", (1, 0), (2, 2), 2),
    ("loop:2", (0,), (3,), 2),
    ("kronecker:2", (1, 0), (1, 3), 3),
    ("loop:1", (0,), (3,), 3),
]


def _time(tables, backend: str, repeat: int):
    best, result = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        result = run_census(tables, backend=backend)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=1)
    args = ap.parse_args()
    if "compiled" not in BACKENDS:
        print("compiled backend not built; only timing the Python kernel")
    print(f"{'quiver':<12} {'d':<8} {'q':>2} {'points':>8} {'python s':>9} {'compiled s':>11} {'speedup':>8}")
    for name, theta, d, q in CASES:
        kind, m = name.split(":")
        Q = standard_quiver(kind, int(m))
        tables = prepare(q, d, theta, Q.arrow_pairs)
        t_py, r_py = _time(tables, "python", args.repeat)
        if "compiled" in BACKENDS:
            t_c, r_c = _time(tables, "compiled", args.repeat)
            assert r_c == r_py, "backends disagree"
            print(f"{name:<12} {str(d):<8} {q:>2} {tables.n_points:>8} {t_py:>9.3f} {t_c:>11.4f} {t_py / t_c:>7.1f}x")
        else:
            print(f"{name:<12} {str(d):<8} {q:>2} {tables.n_points:>8} {t_py:>9.3f} {'-':>11} {'-':>8}")


if __name__ == "__main__":
    main()
