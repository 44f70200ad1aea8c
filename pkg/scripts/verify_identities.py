#!/usr/bin/env python3
"""Exact operator identities plus their finite-difference counterparts."""

from nongauss.experiments import (
    CUBIC_OPERATORS,
    QUARTIC_OPERATORS,
    fd_residuals_cubic_closed_form,
    fd_residuals_quartic,
    op_name,
    residual_passes,
)
from nongauss.poly_core import PolyReal
from nongauss.symbolic import (
    check_annihilation,
    check_residual_identity,
    cubic_annihilation_specs,
    quartic_residual_specs,
)


def main():
    ok = True
    for sign in (-1, 1):
        for spec in cubic_annihilation_specs(sign):
            holds = check_annihilation(spec).holds
            ok &= holds
            print(f"{spec.label:28s} {spec.operator_str():14s} {'exact zero' if holds else 'FAILS'}")
        for spec in quartic_residual_specs(sign):
            holds = check_residual_identity(spec).holds
            ok &= holds
            print(f"{spec.label:28s} {spec.operator_str():14s} {'holds' if holds else 'FAILS'}")

    for coeffs, record, ops in (
        ([1, 0, 1, 0], fd_residuals_cubic_closed_form(PolyReal([1, 0, 1, 0])), CUBIC_OPERATORS),
        ([1, 0, -1, 0], fd_residuals_cubic_closed_form(PolyReal([1, 0, -1, 0])), CUBIC_OPERATORS),
        ([1, 0, 1, 0, 1], fd_residuals_quartic(PolyReal([1, 0, 1, 0, 1])), QUARTIC_OPERATORS),
    ):
        for op in ops:
            name = op_name(op)
            passed = residual_passes(record, name)
            ok &= passed
            print(f"FD {coeffs} {name}: {record.residuals[name]:+.2e} "
                  f"(budget {record.residuals['budget:' + name]:.2e}) {'ok' if passed else 'OUT OF BUDGET'}")
    raise SystemExit(0 if ok else 4)


if __name__ == "__main__":
    main()
