"""Print the polynomials p_m and the values -(log|T_n|)^{(m)}(pi/n) as exact multiples of n^m.

    python scripts/logderiv_table.py --m-max 12
"""
from __future__ import annotations

import argparse

from circpolar.closedform import riesz_polarization_poly, tn_derivative_rational, tn_derivative_via_pm
from circpolar.kernels import pm_polynomial


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--m-max", type=int, default=8)
    args = ap.parse_args()

    for m in range(2, args.m_max + 1, 2):
        c = tn_derivative_rational(m)
        # cross-check the exact constant against the kernel route at n = 3
        via = tn_derivative_via_pm(3, m) / 3 ** m
        print(f"m={m:<3} p_m coeffs {list(pm_polynomial(m).coeffs)}")
        print(f"      value = {c} * n^{m}   (kernel route: {via:.15g})")
    print()
    for m in range(1, 5):
        poly = riesz_polarization_poly(m)
        terms = " + ".join(f"{c} n^{p}" for p, c in sorted(poly.items()))
        print(f"M_n^{2 * m} = {terms}")


if __name__ == "__main__":
    main()
