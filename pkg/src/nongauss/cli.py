"""Command-line front end.

Exit codes: 0 success, 2 domain or parse error, 3 no convergence,
4 identity/verification failure.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import random
import sys
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from nongauss import experiments as ex
from nongauss.errors import (
    DomainError,
    ExponentOverflow,
    IllConditioned,
    NoConvergence,
    ParseError,
    StepTooSmall,
)
from nongauss.poly_core import (
    DiscRoute,
    PolyReal,
    discriminant_report,
)
from nongauss.quadrature import TOL_RANGE, BoxSpec
from nongauss.symbolic import (
    check_annihilation,
    check_residual_identity,
    cubic_annihilation_specs,
    quartic_residual_specs,
    to_canonical,
)

EXIT_OK = 0
EXIT_DOMAIN = 2
EXIT_NO_CONVERGENCE = 3
EXIT_IDENTITY = 4

SCHEMA_PATH = Path(__file__).with_name("schemas") / "report.schema.json"


@dataclass
class RunConfig:
    subcommand: str
    coeffs: list[float] | None = None
    family: Path | None = None
    tol: float = 1e-10
    R: float = 2.0
    output_format: str = "json"
    seed: int = 0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if not TOL_RANGE[0] <= self.tol <= TOL_RANGE[1]:
            raise DomainError(f"--tol must lie in [{TOL_RANGE[0]:g}, {TOL_RANGE[1]:g}]")
        if not 0 <= self.seed < 2**64:
            raise DomainError("--seed must be a 64-bit unsigned integer")


# ---------------------------------------------------------------------------
# parsing


def parse_coeffs(text: str) -> list[float]:
    """Comma-separated real numbers; errors report the 1-based character position."""
    values = []
    pos = 1
    for token in text.split(","):
        stripped = token.strip()
        try:
            value = float(stripped)
        except ValueError:
            raise ParseError(f"not a number: {stripped!r}", position=pos) from None
        if not math.isfinite(value):
            raise ParseError(f"non-finite coefficient {stripped!r}", position=pos)
        values.append(value)
        pos += len(token) + 1
    return values


def read_family(path: Path) -> list[tuple[PolyReal, str]]:
    """CSV with header ``a,b,c,d,e`` and an optional ``label`` column."""
    try:
        handle = open(path, newline="")
    except OSError as exc:
        raise ParseError(f"cannot read family file {path}: {exc.strerror}") from None
    with handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        if header[:5] != ["a", "b", "c", "d", "e"] or len(header) not in (5, 6) or (
            len(header) == 6 and header[5] != "label"
        ):
            raise ParseError(f"{path}: header must be a,b,c,d,e[,label], got {','.join(header)}", position=1)
        out = []
        for line_no, row in enumerate(reader, start=2):
            try:
                coeffs = [float(row[k]) for k in "abcde"]
            except (TypeError, ValueError):
                raise ParseError(f"{path}: bad number on line {line_no}", position=line_no) from None
            out.append((PolyReal(coeffs), row.get("label") or ""))
    if not out:
        raise ParseError(f"{path}: no polynomials")
    return out


# ---------------------------------------------------------------------------
# rendering


def fmt(x) -> str:
    """Round-trip-exact, locale-independent number text."""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def render_json(report: dict) -> str:
    return json.dumps(report, separators=(",", ":"), allow_nan=False) + "\n"


RECORD_COLUMNS = ("inputs", "D", "E", "numeric_integral", "numeric_error", "predicted", "rel_deviation")


def _csv_text(header: Sequence[str], rows: Sequence[Sequence], trailer: Sequence[Sequence] = ()) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([fmt(v) if v is not None else "" for v in row])
    for row in trailer:
        writer.writerow(row)
    return buf.getvalue()


def _coeff_cell(values) -> str:
    return " ".join(fmt(float(v)) for v in values)


def render_records_csv(records: list[dict]) -> str:
    rows = []
    for rec in records:
        rows.append([_coeff_cell(rec["inputs"])] + [rec.get(k) for k in RECORD_COLUMNS[1:]])
    return _csv_text(RECORD_COLUMNS, rows)


def render_text(report: dict) -> str:
    lines = []

    def walk(obj, indent=0):
        pad = "  " * indent
        if isinstance(obj, dict):
            for key, value in obj.items():
                if isinstance(value, (dict, list)) and value and not _is_flat_list(value):
                    lines.append(f"{pad}{key}:")
                    walk(value, indent + 1)
                else:
                    lines.append(f"{pad}{key}: {_text_value(value)}")
        elif isinstance(obj, list):
            for item in obj:
                if isinstance(item, (dict, list)):
                    lines.append(f"{pad}-")
                    walk(item, indent + 1)
                else:
                    lines.append(f"{pad}- {_text_value(item)}")

    walk(report)
    return "\n".join(lines) + "\n"


def _is_flat_list(value) -> bool:
    return isinstance(value, list) and all(not isinstance(v, (dict, list)) for v in value)


def _text_value(value) -> str:
    if isinstance(value, list):
        return ", ".join(_text_value(v) for v in value)
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "-"
    return fmt(value)


def render(report: dict, output_format: str) -> str:
    if output_format == "json":
        return render_json(report)
    if output_format == "text":
        return render_text(report)
    if output_format == "csv":
        if report.get("command") == "quartic-sweep":
            return render_sweep_csv(report)
        if "records" in report:
            return render_records_csv(report["records"])
        if "identities" in report:
            rows = [[r["label"], r["operator"], str(r["holds"]).lower(), r["witness"]] for r in report["identities"]]
            return _csv_text(("label", "operator", "holds", "witness"), rows)
        keys = [k for k in report if k != "command"]
        return _csv_text(keys, [[report[k] for k in keys]])
    raise DomainError(f"unknown output format {output_format!r}")


def render_sweep_csv(report: dict) -> str:
    rows = []
    for rec in report["records"]:
        rows.append(
            [
                _coeff_cell(rec["inputs"]),
                rec["D"],
                rec["E"],
                rec["numeric_integral"],
                rec["numeric_error"],
                rec["residuals"]["ratio"],
            ]
        )
    return _csv_text(
        ("coeffs", "D", "E", "integral", "err", "ratio"), rows, trailer=[("verdict", report["verdict"])]
    )


# ---------------------------------------------------------------------------
# commands


def _require_coeffs(cfg: RunConfig, lengths: Sequence[int], default=None) -> list[float]:
    coeffs = cfg.coeffs if cfg.coeffs is not None else default
    if coeffs is None:
        raise DomainError("--coeffs is required")
    if len(coeffs) not in lengths:
        raise DomainError(f"expected {' or '.join(map(str, lengths))} coefficients, got {len(coeffs)}")
    return coeffs


def cmd_disc(cfg: RunConfig) -> tuple[dict, int]:
    coeffs = _require_coeffs(cfg, (3, 4, 5))
    p = PolyReal(coeffs)
    explicit = discriminant_report(p, DiscRoute.EXPLICIT)
    via_res = discriminant_report(p, DiscRoute.RESULTANT)
    report = {"command": "disc", "degree": p.degree, "D": explicit.D}
    if explicit.E is not None:
        report["E"] = explicit.E
    report["route_agreement"] = explicit.D_exact == via_res.D_exact
    return report, EXIT_OK if report["route_agreement"] else EXIT_IDENTITY


def cmd_verify_cubic(cfg: RunConfig) -> tuple[dict, int]:
    n_random = cfg.extra.get("random", 0)
    if n_random:
        records = ex.verify_random_cubics(n_random, cfg.seed, cfg.tol, workers=cfg.extra.get("workers", 1))
    else:
        records = [ex.verify_cubic_formula(PolyReal(_require_coeffs(cfg, (4,))), cfg.tol)]
    limit = cfg.extra.get("max_rel_dev", 1e-7)
    worst = max(r.rel_deviation for r in records)
    report = {
        "command": "verify-cubic",
        "records": [r.to_dict() for r in records],
        "max_rel_deviation": worst,
        "threshold": limit,
        "pass": worst <= limit,
    }
    return report, EXIT_OK if worst <= limit else EXIT_IDENTITY


def cmd_gauss(cfg: RunConfig) -> tuple[dict, int]:
    n_random = cfg.extra.get("random", 0)
    if n_random:
        rng = random.Random(cfg.seed)
        triples = []
        while len(triples) < n_random:
            a, b, c = rng.uniform(0.1, 3.0), rng.uniform(-3.0, 3.0), rng.uniform(-3.0, 3.0)
            if b * b - 4 * a * c < -0.1:
                triples.append((a, b, c))
    else:
        triples = [tuple(_require_coeffs(cfg, (3,)))]
    records = [ex.verify_gaussian(a, b, c, cfg.tol) for a, b, c in triples]
    limit = cfg.extra.get("max_rel_dev", 1e-9)
    worst = max(r.rel_deviation for r in records)
    report = {
        "command": "gauss",
        "records": [r.to_dict() for r in records],
        "max_rel_deviation": worst,
        "threshold": limit,
        "pass": worst <= limit,
    }
    return report, EXIT_OK if worst <= limit else EXIT_IDENTITY


def cmd_quartic_sweep(cfg: RunConfig) -> tuple[dict, int]:
    if cfg.family is not None:
        members = read_family(cfg.family)
    elif cfg.extra.get("scaling_control"):
        members = [(p, f"lambda={lam:g}") for p, lam in zip(ex.scaling_orbit(PolyReal([1, 0, 0, 0, 1])), (1, 2, 4))]
    elif cfg.coeffs is not None:
        members = [(PolyReal(_require_coeffs(cfg, (5,))), "")]
    else:
        members = [(p, f"c={c:g}") for p, c in zip(ex.c_family(), (-1, 0, 1))]
    sweep = ex.quartic_sweep(
        [p for p, _ in members],
        cfg.tol,
        allow_indefinite=cfg.extra.get("allow_indefinite", False),
        workers=cfg.extra.get("workers", 1),
    )
    records = []
    for rec, (_, label) in zip(sweep.records, members):
        if label:
            rec.notes.insert(0, f"label: {label}")
        records.append(rec.to_dict())
    report = {
        "command": "quartic-sweep",
        "records": records,
        "ratio_spread": sweep.spread,
        "error_budget": sweep.error_budget,
        "verdict": sweep.verdict.value,
    }
    return report, EXIT_OK


def cmd_identities(cfg: RunConfig) -> tuple[dict, int]:
    degrees = [cfg.extra["degree"]] if cfg.extra.get("degree") else [3, 4]
    if cfg.extra.get("symbolic"):
        results = []
        for degree in degrees:
            for sign in (-1, 1):
                if degree == 3:
                    pairs = [(spec, check_annihilation(spec)) for spec in cubic_annihilation_specs(sign)]
                else:
                    pairs = [(spec, check_residual_identity(spec)) for spec in quartic_residual_specs(sign)]
                for spec, res in pairs:
                    label = spec.label if degree == 4 else f"{spec.label} ({'D>0' if sign > 0 else 'D<0'})"
                    results.append(
                        {
                            "label": label,
                            "operator": spec.operator_str(),
                            "holds": res.holds,
                            "witness": to_canonical(res.witness),
                        }
                    )
        ok = all(r["holds"] for r in results)
        report = {"command": "identities", "mode": "symbolic", "identities": results, "all_hold": ok}
        return report, EXIT_OK if ok else EXIT_IDENTITY

    records = []
    ok = True
    for degree in degrees:
        if degree == 4:
            base = PolyReal(cfg.coeffs if cfg.coeffs and len(cfg.coeffs) == 5 else [1, 0, 1, 0, 1])
            rec = ex.fd_residuals_quartic(base, ex.FDScheme(cfg.extra.get("h", 1e-2)), cfg.tol)
            names = [ex.op_name(op) for op in ex.QUARTIC_OPERATORS]
        else:
            base = PolyReal(cfg.coeffs if cfg.coeffs and len(cfg.coeffs) == 4 else [1, 0, 1, 0])
            rec = ex.fd_residuals_cubic_closed_form(base, ex.FDScheme(cfg.extra.get("h", 1e-3)))
            names = [ex.op_name(op) for op in ex.CUBIC_OPERATORS]
        ok = ok and all(ex.residual_passes(rec, n) for n in names)
        records.append(rec.to_dict())
    report = {"command": "identities", "mode": "finite-difference", "records": records, "all_hold": ok}
    return report, EXIT_OK if ok else EXIT_IDENTITY


def cmd_box2d(cfg: RunConfig) -> tuple[dict, int]:
    a, b, c, d = _require_coeffs(cfg, (4,))
    rec = ex.z2_symmetry_check(BoxSpec(a, b, c, d, cfg.R, cfg.tol))
    passed = rec.notes == ["pass"]
    report = {"command": "box2d", "records": [rec.to_dict()], "pass": passed}
    return report, EXIT_OK if passed else EXIT_IDENTITY


def cmd_probe_e(cfg: RunConfig) -> tuple[dict, int]:
    p = PolyReal(_require_coeffs(cfg, (5,)))
    rec = ex.probe_E(p, cfg.extra.get("shifts", [1.0]), cfg.extra.get("scales", [2.0]))
    report = {"command": "probe-e", "records": [rec.to_dict()]}
    return report, EXIT_OK


COMMANDS = {
    "disc": cmd_disc,
    "verify-cubic": cmd_verify_cubic,
    "gauss": cmd_gauss,
    "quartic-sweep": cmd_quartic_sweep,
    "identities": cmd_identities,
    "box2d": cmd_box2d,
    "probe-e": cmd_probe_e,
}


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _floats(text: str) -> list[float]:
    return parse_coeffs(text)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--coeffs", type=str, help="comma-separated coefficients, highest degree first")
    common.add_argument("--tol", type=float, default=1e-10)
    common.add_argument("--format", dest="output_format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--workers", type=int, default=1)

    parser = _Parser(prog="nongauss", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    sub.add_parser("disc", parents=[common], help="discriminant (and E for quartics)")

    p = sub.add_parser("verify-cubic", parents=[common], help="renormalized cubic integral vs closed form")
    p.add_argument("--random", type=int, default=0, help="verify N random admissible cubics instead")
    p.add_argument("--max-rel-dev", type=float, default=1e-7)

    p = sub.add_parser("gauss", parents=[common], help="int dx/(ax^2+bx+c) vs 2 pi / sqrt(-D)")
    p.add_argument("--random", type=int, default=0)
    p.add_argument("--max-rel-dev", type=float, default=1e-9)

    p = sub.add_parser("quartic-sweep", parents=[common], help="test F*|D|^(1/12) for constancy")
    p.add_argument("--family", type=Path, help="CSV with header a,b,c,d,e[,label]")
    p.add_argument("--scaling-control", action="store_true", help="run the lambda*(x^4+1) positive control")
    p.add_argument("--allow-indefinite", action="store_true", help="admit quartics with real roots")

    p = sub.add_parser("identities", parents=[common], help="operator identities, exact or by finite differences")
    p.add_argument("--degree", type=int, choices=(3, 4))
    p.add_argument("--symbolic", action="store_true")
    p.add_argument("--h", type=float, help="finite-difference step")

    p = sub.add_parser("box2d", parents=[common], help="finite box integral and its Z2 symmetry")
    p.add_argument("--R", type=float, default=2.0)

    p = sub.add_parser("probe-e", parents=[common], help="behaviour of E under shifts, reversal, scaling")
    p.add_argument("--shifts", type=_floats, default=[1.0])
    p.add_argument("--scales", type=_floats, default=[2.0])
    return parser


def config_from_args(argv: Sequence[str] | None) -> RunConfig:
    ns = build_parser().parse_args(argv)
    extra = {"workers": ns.workers}
    for key in ("random", "max_rel_dev", "scaling_control", "allow_indefinite", "degree", "symbolic", "shifts", "scales"):
        if hasattr(ns, key):
            extra[key] = getattr(ns, key)
    if getattr(ns, "h", None) is not None:
        extra["h"] = ns.h
    return RunConfig(
        subcommand=ns.subcommand,
        coeffs=parse_coeffs(ns.coeffs) if ns.coeffs is not None else None,
        family=getattr(ns, "family", None),
        tol=ns.tol,
        R=getattr(ns, "R", 2.0),
        output_format=ns.output_format,
        seed=ns.seed,
        extra=extra,
    )


def run(cfg: RunConfig) -> tuple[str, int]:
    report, code = COMMANDS[cfg.subcommand](cfg)
    return render(report, cfg.output_format), code


def main(argv: Sequence[str] | None = None) -> int:
    try:
        cfg = config_from_args(argv)
        text, code = run(cfg)
    except NoConvergence as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NO_CONVERGENCE
    except (DomainError, IllConditioned, StepTooSmall, ExponentOverflow) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
