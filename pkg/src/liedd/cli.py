"""Command-line entry point.

Exit codes: 0 when every check passes, 1 when any check fails, 2 on usage or
structural errors (unknown ids, malformed documents, bad flags).
"""
from __future__ import annotations

import argparse
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import catalog as cat
from . import schema
from .algebra import Bivector, JacobiError, LieAlgebra, StructureError, jacobi_defect
from .bialgebra import classify_yb, coboundary_delta, cocycle_defect
from .contraction import DegenerateInput, DivergentLimit, auto_scale, scaled_limit
from .double import DoubleSpec, assemble_double
from .homspace import (
    DEFAULT_POINTS,
    DEFAULT_SEED,
    BracketNotPolynomial,
    SamplePlan,
    euclid_chart,
    fit_bracket,
    jacobiator,
    poincare_chart,
    verify_phs,
)
from .report import (
    REPORT_SCHEMA,
    SUITES,
    TOL_ENV,
    default_tolerance,
    render_text,
    run_suite,
    toolchain_stamp,
)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


# --------------------------------------------------------------------------
# Poisson homogeneous space cases


PHS_CASES = {
    "euclid3.class2": ("euclid", lambda: cat.euclid_class(2), cat.EUCLID_PHS[2], {}),
    "euclid3.class1": (
        "euclid", lambda: cat.euclid_class(1), cat.EUCLID_PHS[1],
        {"alpha": 1, "rho": 1, "a12": 0, "a13": 0, "a23": 0},
    ),
    **{
        f"poincare21.case{n}": (
            "poincare",
            (lambda n=n: cat.poincare_case(n)),
            cat.POINCARE_TABLE2.get(n),
            {**({"lam": 1} if n in (3, 4, 5) else {}),
             **(cat.POINCARE_TABLE2[n].presets.get("dd", {}) if n in cat.POINCARE_TABLE2 else {})},
        )
        for n in range(8)
    },
}


def _parse_params(items) -> dict:
    out = {}
    for item in items or ():
        if "=" not in item:
            raise UsageError(f"--params expects k=v, got {item!r}")
        k, v = item.split("=", 1)
        try:
            out[k.strip()] = float(v)
        except ValueError:
            raise UsageError(f"parameter {k!r} needs a numeric value") from None
    return out


def phs_report(case: str, params=None, points=DEFAULT_POINTS, seed=DEFAULT_SEED, tol=None,
               fit=False, chart_order="mirrored") -> dict:
    if case not in PHS_CASES:
        raise UsageError(f"unknown PHS case {case!r}; choose from {', '.join(PHS_CASES)}")
    kind, rfn, target, defaults = PHS_CASES[case]
    tol = default_tolerance() if tol is None else tol
    values = {**defaults, **(params or {})}
    chart = euclid_chart() if kind == "euclid" else poincare_chart(chart_order)
    plan = SamplePlan(points=points, seed=seed)
    r = rfn()
    doc = {
        "schema": REPORT_SCHEMA,
        "case": case,
        "chart": [f"{g}:{c}" for g, c in chart.factors],
        "params": values,
        "seed": seed,
        "points": points,
        "tolerance": tol,
        "stamp": toolchain_stamp(),
        "timestamp": _now(),
    }
    passed = True
    if target is not None:
        rep = verify_phs(chart, r, target, plan, values, tol)
        doc["target"] = {f"{i},{j}": str(e) for (i, j), e in target.table().items()}
        doc["verify"] = rep.to_dict()
        passed = rep.passed
    if fit or target is None:
        try:
            res = fit_bracket(chart, r, plan=plan, params=values, tol=tol)
        except BracketNotPolynomial as exc:
            doc["fit"] = {"error": str(exc), "residual": exc.residual}
            passed = passed and target is not None
        else:
            jac = jacobiator(res.target)
            doc["fit"] = {**res.to_dict(), "jacobiator_zero": all(v == 0 for v in jac.values())}
    doc["pass"] = passed
    return doc


# --------------------------------------------------------------------------
# contraction


def contract_report(entry_id: str, scale: str = "auto") -> dict:
    entry = cat.get(entry_id)
    x = entry.payload
    if scale == "auto":
        n, limit = auto_scale(x)
    else:
        try:
            n = int(scale)
        except ValueError:
            raise UsageError(f"--scale expects an integer or 'auto', got {scale!r}") from None
        limit = scaled_limit(x, n)
    return {
        "schema": REPORT_SCHEMA,
        "entry": entry_id,
        "scale": n,
        "limit": schema.to_dict(limit),
        "provenance": {
            "source": entry_id,
            "citation": entry.citation,
            "parameter": "kappa",
            "operation": f"kappa^{n} x, kappa -> 0",
            "stamp": toolchain_stamp(),
            "timestamp": _now(),
        },
    }


# --------------------------------------------------------------------------
# user documents


def check_document(path: str) -> dict:
    obj = schema.load(path)
    out: dict = {"schema": REPORT_SCHEMA, "file": str(path), "kind": type(obj).__name__}
    if isinstance(obj, LieAlgebra):
        out["jacobi"] = jacobi_defect(obj).is_zero
        out["pass"] = out["jacobi"]
    elif isinstance(obj, Bivector):
        L = obj.algebra
        delta = coboundary_delta(L, obj)
        out["yb"] = classify_yb(L, obj).value
        out["cocycle"] = cocycle_defect(L, delta).is_zero
        out["delta"] = schema.to_dict(delta)["images"]
        out["pass"] = out["cocycle"]
    elif isinstance(obj, DoubleSpec):
        try:
            D = assemble_double(obj)
        except JacobiError as exc:
            out["matched_pair"] = False
            out["error"] = str(exc)
            out["pass"] = False
        else:
            out["matched_pair"] = True
            out["double"] = schema.to_dict(D.algebra)
            out["pass"] = True
    else:
        out["document"] = schema.to_dict(obj)
        out["pass"] = True
    return out


# --------------------------------------------------------------------------
# plumbing


def _now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def _text(doc: dict) -> str:
    if "checks" in doc:
        return render_text(doc)
    lines = []

    def walk(prefix, value):
        if isinstance(value, dict):
            for k, v in value.items():
                walk(f"{prefix}{k}.", v)
        else:
            lines.append(f"{prefix[:-1]}: {value}")

    walk("", doc)
    return "\n".join(lines)


def _emit(doc: dict, args) -> None:
    text = json.dumps(doc, indent=2, ensure_ascii=False) if args.format == "json" else _text(doc)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "text"), default="json", help="output format (default: json)")
    common.add_argument("--seed", type=int, default=DEFAULT_SEED, help=f"RNG seed (default: {DEFAULT_SEED})")
    common.add_argument("--tol", type=float, default=None,
                        help=f"numeric tolerance (default: ${TOL_ENV} or 1e-9)")
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")

    p = _Parser(prog="liedd", description="Lie bialgebra, Drinfel'd double and Poisson homogeneous space checks.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("run_suite", aliases=["suite"], parents=[common], help="run a verification suite")
    s.add_argument("name", help=f"one of {', '.join(SUITES)}")
    s.add_argument("--points", type=int, default=DEFAULT_POINTS, help=f"sample points (default: {DEFAULT_POINTS})")
    s.add_argument("--workers", type=int, default=1, help="run checks on this many threads (default: 1)")

    c = sub.add_parser("contract", parents=[common], help="kappa -> 0 limit of a catalog entry")
    c.add_argument("entry", help="catalog id, e.g. so31.rA")
    c.add_argument("--scale", default="auto", help="power n of kappa, or 'auto' (default: auto)")

    h = sub.add_parser("phs", parents=[common], help="Sklyanin bracket of a Poisson homogeneous space")
    h.add_argument("--case", required=True, help=f"one of {', '.join(PHS_CASES)}")
    h.add_argument("--params", nargs="*", default=[], metavar="K=V", help="numeric parameter values")
    h.add_argument("--points", type=int, default=DEFAULT_POINTS, help=f"sample points (default: {DEFAULT_POINTS})")
    h.add_argument("--fit", action="store_true", help="also fit a degree <= 2 bracket table")
    h.add_argument("--chart", choices=("mirrored", "reversed"), default="mirrored",
                   help="Poincaré chart order (default: mirrored)")

    ls = sub.add_parser("list", parents=[common], help="list catalog ids")
    ls.add_argument("--kind", default=None, help="filter by kind (algebra, rmatrix, poisson, ...)")

    e = sub.add_parser("export", parents=[common], help="emit a catalog entry as a schema document")
    e.add_argument("entry")

    k = sub.add_parser("check", parents=[common], help="validate a TOML/JSON algebra, r-matrix or double")
    k.add_argument("file")
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.tol is not None and not args.tol > 0:
            raise UsageError("--tol must be positive")
        cmd = args.command
        if cmd in ("run_suite", "suite"):
            if args.name not in SUITES:
                raise UsageError(f"unknown suite {args.name!r}; choose from {', '.join(SUITES)}")
            report = run_suite(args.name, seed=args.seed, tol=args.tol, points=args.points, workers=args.workers)
            _emit(report.to_dict(), args)
            return report.exit_code
        if cmd == "contract":
            try:
                doc = contract_report(args.entry, args.scale)
            except DivergentLimit as exc:
                doc = {"schema": REPORT_SCHEMA, "entry": args.entry, "error": str(exc), "pole_order": exc.pole_order}
                _emit(doc, args)
                return EXIT_FAIL
            _emit(doc, args)
            return EXIT_OK
        if cmd == "phs":
            doc = phs_report(args.case, _parse_params(args.params), args.points, args.seed, args.tol,
                             args.fit, args.chart)
            _emit(doc, args)
            return EXIT_OK if doc["pass"] else EXIT_FAIL
        if cmd == "list":
            ids = cat.list_entries(args.kind)
            doc = {"schema": REPORT_SCHEMA, "entries": {i: cat.get(i).citation for i in ids}}
            _emit(doc, args)
            return EXIT_OK
        if cmd == "export":
            _emit(schema.to_dict(cat.get(args.entry).payload), args)
            return EXIT_OK
        if cmd == "check":
            doc = check_document(args.file)
            _emit(doc, args)
            return EXIT_OK if doc["pass"] else EXIT_FAIL
    except UsageError as exc:
        print(f"liedd: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (cat.CatalogLookupError, schema.SchemaError, StructureError, DegenerateInput,
            FileNotFoundError, ValueError) as exc:
        print(f"liedd: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
