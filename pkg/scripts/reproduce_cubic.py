#!/usr/bin/env python3
"""Renormalized cubic integrals against C-/(-D)^(1/6) and C+/D^(1/6)."""

import argparse

from nongauss.experiments import verify_cubic_formula, verify_random_cubics
from nongauss.poly_core import PolyReal


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=100, help="number of random cubics")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tol", type=float, default=1e-10)
    args = ap.parse_args()

    for coeffs in ([1, 0, 1, 0], [1, 0, -1, 0]):
        rec = verify_cubic_formula(PolyReal(coeffs), args.tol)
        print(f"{coeffs}: D={rec.D:g} integral={rec.numeric_integral:.15g} "
              f"predicted={rec.predicted:.15g} rel_dev={rec.rel_deviation:.2e}")

    records = verify_random_cubics(args.n, args.seed, args.tol)
    worst = max(records, key=lambda r: r.rel_deviation)
    print(f"{args.n} random cubics (seed {args.seed}): max rel_dev={worst.rel_deviation:.2e} at {worst.inputs}")


if __name__ == "__main__":
    main()
