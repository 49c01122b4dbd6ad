"""Numerically maximise the Khrushchev quantity m(omega) for a range of n.

    python scripts/khrushchev_sweep.py --n-max 8 --restarts 32
"""
from __future__ import annotations

import argparse
import time

from circpolar.optimize import optimize_khrushchev


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--restarts", type=int, default=32)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'n':>3} {'best m':>20} {'|m - 2|':>10} {'gap dev':>10} {'evals':>7} {'sec':>6}")
    for n in range(2, args.n_max + 1):
        t0 = time.perf_counter()
        rep = optimize_khrushchev(n, restarts=args.restarts, seed=args.seed)
        dt = time.perf_counter() - t0
        print(f"{n:>3} {rep.best_value:>20.16f} {rep.error:>10.2e} {rep.gap_deviation:>10.2e} "
              f"{rep.evaluations:>7} {dt:>6.2f}")


if __name__ == "__main__":
    main()
