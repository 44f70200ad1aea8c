#!/usr/bin/env python3
"""Ratio F*|D|^(1/12) across x^4 + c x^2 + 1 and along a scaling orbit."""

import argparse

from nongauss.experiments import c_family, quartic_sweep, scaling_orbit
from nongauss.poly_core import PolyReal


def show(title, result):
    print(title)
    for rec, ratio in zip(result.records, result.ratios):
        print(f"  {rec.inputs}  D={rec.D:g}  E={rec.E:g}  F={rec.numeric_integral:.12g}  ratio={ratio:.12g}")
    print(f"  spread={result.spread:.3g}  error budget={result.error_budget:.3g}  -> {result.verdict.value}")


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--c", type=float, nargs="+", default=[-1.0, 0.0, 1.0])
    ap.add_argument("--tol", type=float, default=1e-10)
    args = ap.parse_args()
    show("c-family", quartic_sweep(c_family(args.c), args.tol))
    show("scaling orbit of x^4 + 1", quartic_sweep(scaling_orbit(PolyReal([1, 0, 0, 0, 1])), args.tol))


if __name__ == "__main__":
    main()
