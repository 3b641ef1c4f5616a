"""Compiled versus pure-numpy row reduction over a few fields.

Run: python3 benchmarks/bench_rref.py [--repeat N]
"""
import argparse
import time

import numpy as np

from perverse_sl2.exactla import field_of_order, linalg, rref


def timed(F, mats, backend: str) -> float:
    linalg.set_backend(backend)
    t0 = time.perf_counter()
    for M in mats:
        rref(F, M)
    return time.perf_counter() - t0


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    if not linalg.compiled_available():
        print("compiled extension not built; nothing to compare")
        return
    rng = np.random.default_rng(20240611)
    print(f"{'q':>4} {'size':>9} {'pure s':>9} {'compiled s':>11} {'speedup':>8}")
    for q in (2, 3, 4, 8, 9):
        F = field_of_order(q)
        for n in (32, 96, 192):
            mats = [rng.integers(0, q, size=(n, n + 8)) for _ in range(args.repeat)]
            # identical output is a precondition for a fair comparison
            linalg.set_backend("pure")
            ref = [rref(F, M).R for M in mats]
            linalg.set_backend("compiled")
            assert all(np.array_equal(a, rref(F, M).R) for a, M in zip(ref, mats))
            tp = timed(F, mats, "pure")
            tc = timed(F, mats, "compiled")
            print(f"{q:>4} {n:>4}x{n + 8:<4} {tp:>9.4f} {tc:>11.4f} {tp / tc:>7.1f}x")
    linalg.set_backend("compiled")


if __name__ == "__main__":
    main()
