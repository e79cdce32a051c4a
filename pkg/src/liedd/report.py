"""Verification suites and their machine-readable reports."""
from __future__ import annotations

import json
import os
import platform
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from datetime import datetime, timezone
from typing import Callable, Mapping

import numpy as np
import sympy as sp

from . import catalog as cat
from .algebra import ad_invariant, jacobi_defect
from .bialgebra import (
    YBClass,
    classify_yb,
    coboundary_delta,
    cocycle_defect,
    coisotropy_classify,
    grade_decompose,
    stachura_invariants,
)
from .contraction import DivergentLimit, auto_scale, contract_algebra, scaled_limit
from .double import (
    assemble_double,
    associativity_check,
    canonical_casimir,
    canonical_r,
    delta_on_double,
    euclidean_spec,
)
from .homspace import (
    DEFAULT_POINTS,
    DEFAULT_SEED,
    DEFAULT_TOL,
    BracketNotPolynomial,
    SamplePlan,
    euclid_chart,
    euclid_reference_fields,
    fit_bracket,
    invariant_fields,
    jacobiator,
    poincare_chart,
    sample_poisson,
    verify_phs,
)
from .scalars import format_scalar, substitute

REPORT_SCHEMA = 1
TOL_ENV = "LIEDD_TOL"
SUITES = ("euclid", "poincare", "so31-contraction", "all")

PASS, FAIL, ERROR, CHART_DEPENDENT = "pass", "fail", "error", "chart-dependent"


class UnknownSuite(ValueError):
    pass


def default_tolerance() -> float:
    raw = os.environ.get(TOL_ENV)
    if raw is None:
        return DEFAULT_TOL
    try:
        tol = float(raw)
    except ValueError:
        raise ValueError(f"{TOL_ENV}={raw!r} is not a number") from None
    if not tol > 0:
        raise ValueError(f"{TOL_ENV} must be positive")
    return tol


@dataclass
class CheckRecord:
    id: str
    citation: str
    status: str
    details: dict = dc_field(default_factory=dict)
    residuals: dict = dc_field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"id": self.id, "citation": self.citation, "status": self.status,
                "details": self.details, "residuals": self.residuals}


@dataclass
class VerificationReport:
    suite: str
    seed: int
    tolerance: float
    points: int
    checks: list[CheckRecord]
    stamp: dict
    timestamp: str = ""

    @property
    def passed(self) -> bool:
        return all(c.status in (PASS, CHART_DEPENDENT) for c in self.checks)

    @property
    def exit_code(self) -> int:
        return 0 if self.passed else 1

    def to_dict(self) -> dict:
        return {
            "schema": REPORT_SCHEMA,
            "suite": self.suite,
            "seed": self.seed,
            "tolerance": self.tolerance,
            "points": self.points,
            "stamp": self.stamp,
            "timestamp": self.timestamp,
            "summary": summarize(self.checks),
            "checks": [c.to_dict() for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)

    @classmethod
    def from_dict(cls, doc: Mapping) -> "VerificationReport":
        if doc.get("schema") != REPORT_SCHEMA:
            raise ValueError(f"unsupported report schema {doc.get('schema')!r}")
        return cls(
            doc["suite"], doc["seed"], doc["tolerance"], doc["points"],
            [CheckRecord(**c) for c in doc["checks"]], dict(doc["stamp"]), doc.get("timestamp", ""),
        )


def summarize(checks) -> dict:
    out = {s: 0 for s in (PASS, FAIL, ERROR, CHART_DEPENDENT)}
    for c in checks:
        out[c.status] += 1
    out["total"] = len(checks)
    return out


def render_text(doc: Mapping) -> str:
    """Human-readable view of a report dictionary."""
    lines = [f"suite {doc['suite']}  seed {doc['seed']}  tol {doc['tolerance']:g}  points {doc['points']}"]
    width = max((len(c["id"]) for c in doc["checks"]), default=0)
    for c in doc["checks"]:
        res = ""
        if c["residuals"]:
            res = "  max residual " + f"{max(c['residuals'].values()):.2e}"
        lines.append(f"  [{c['status'].upper():>15}] {c['id']:<{width}}  {c['citation']}{res}")
        if c["status"] not in (PASS,):
            for k, v in c["details"].items():
                lines.append(f"      {k}: {v}")
    s = doc["summary"]
    lines.append(
        f"{s['pass']} passed, {s['fail']} failed, {s['error']} errors, "
        f"{s['chart-dependent']} chart-dependent of {s['total']}"
    )
    return "\n".join(lines)


def toolchain_stamp() -> dict:
    from . import __version__

    return {
        "liedd": __version__,
        "python": platform.python_version(),
        "numpy": np.__version__,
        "sympy": sp.__version__,
    }


# --------------------------------------------------------------------------
# check machinery


@dataclass(frozen=True)
class Context:
    seed: int
    tol: float
    points: int

    def plan(self, **kw) -> SamplePlan:
        return SamplePlan(points=self.points, seed=self.seed, **kw)


CheckFn = Callable[[Context], tuple]


@dataclass(frozen=True)
class Check:
    id: str
    citation: str
    fn: CheckFn

    def run(self, ctx: Context) -> CheckRecord:
        try:
            out = self.fn(ctx)
        except Exception as exc:  # a crashing check is reported, never raised
            return CheckRecord(self.id, self.citation, ERROR, {"error": f"{type(exc).__name__}: {exc}"})
        status, details, residuals = (tuple(out) + ({}, {}))[:3]
        if isinstance(status, (bool, np.bool_)):
            status = PASS if status else FAIL
        residuals = {k: float(v) for k, v in residuals.items()}
        return CheckRecord(self.id, self.citation, status, details, residuals)


def _s(x) -> str:
    return format_scalar(x)


def _terms(x) -> dict:
    return {"^".join(k): _s(v) for k, v in sorted(x.named_terms().items())}


# --------------------------------------------------------------------------
# shared builders


def _algebra_checks(key: str, builder) -> list[Check]:
    def jac(ctx):
        d = jacobi_defect(builder())
        return d.is_zero, {"witness": d.describe()[:3]}

    def cas(ctx):
        L = builder()
        res = {c: ad_invariant(L, cat.casimir(L, c)) for c in ("C1", "C2")}
        return all(res.values()), {"invariant": res}

    return [
        Check(f"algebra.{key}.jacobi", f"{key}: Jacobi identity, symbolic in all parameters", jac),
        Check(f"algebra.{key}.casimirs", f"{key}: quadratic Casimirs C1, C2 are ad-invariant", cas),
    ]


def _euclid_double():
    return assemble_double(euclidean_spec(), names=("J1", "J2", "J3", "P1", "P2", "P3"))


# --------------------------------------------------------------------------
# euclid suite


def _euclid_checks() -> list[Check]:
    checks = _algebra_checks("euclid3", cat.euclid3)

    def assemble(ctx):
        D = _euclid_double()
        return D.algebra == cat.euclid3(), {"basis": list(D.algebra.basis)}

    def assoc(ctx):
        return associativity_check(_euclid_double()), {"triples": 216}

    def rskew(ctx):
        skew = canonical_r(_euclid_double()).skew
        expected = cat.euclid_class(2)
        return skew == expected, {"r'": _terms(skew)}

    def casimir_inv(ctx):
        D = _euclid_double()
        return ad_invariant(D.algebra, canonical_casimir(D)), {}

    def delta_dd(ctx):
        D = _euclid_double()
        delta = delta_on_double(D)
        rotations_zero = all(delta[g].is_zero() for g in ("J1", "J2", "J3"))
        skew_delta = coboundary_delta(D.algebra, canonical_r(D).skew)
        table = cat.euclid_class_delta(2)
        ok = rotations_zero and all(skew_delta[g] == table[g] for g in D.algebra.basis)
        ok = ok and all(delta[g] * 2 == table[g] for g in D.algebra.basis)
        return ok, {
            "delta_full(P1)": _terms(delta["P1"]),
            "delta_skew(P1)": _terms(skew_delta["P1"]),
        }

    checks += [
        Check("double.euclid.assemble", "(so(3), delta = 0) doubles to e(3) with Y_i = J_i, y^i = P_i", assemble),
        Check("double.euclid.associativity", "<[X,Y],Z> = <X,[Y,Z]> on all basis triples", assoc),
        Check("double.euclid.canonical-r", "r' = r - C2 = sum P_i ^ J_i", rskew),
        Check("double.euclid.casimir", "canonical Casimir of the Euclidean double is ad-invariant", casimir_inv),
        Check("double.euclid.delta", "delta(J_i) = 0, delta(P_1) = 2 P_2 ^ P_3 from r'", delta_dd),
    ]

    def stachura(n, expected):
        def fn(ctx):
            inv = stachura_invariants(cat.euclid_class(n))
            p_ok = expected[0] is None or inv.p == expected[0]
            ok = p_ok and inv.mu == expected[1] and not inv.violations
            return ok, {"p": _s(inv.p), "mu": _s(inv.mu), "violations": inv.violations}
        return fn

    alpha = cat.param("alpha")
    checks += [
        Check("stachura.class1", "class (I): mu = -2 alpha^2, [[b,c]] = [[c,c]] = 0", stachura(1, (None, -2 * alpha**2))),
        Check("stachura.class2", "class (II): p = 0, mu = 2", stachura(2, (0, 2))),
        Check("stachura.class3", "class (III): p = 0, mu = 0", stachura(3, (0, 0))),
    ]

    def yb(rfn, expected):
        def fn(ctx):
            got = classify_yb(cat.euclid3(), rfn())
            return got == expected, {"class": got.value}
        return fn

    def class1_at(alpha_value):
        def build():
            r = cat.euclid_class(1)
            return r.map_coefficients(lambda v: substitute(v, {"alpha": alpha_value}))
        return build

    checks += [
        Check("yb.class1.alpha0", "class (I) with alpha = 0 solves the CYBE", yb(class1_at(0), YBClass.CYBE)),
        Check("yb.class1.alpha1", "class (I) with alpha = 1 is a non-CYBE mCYBE solution", yb(class1_at(1), YBClass.MCYBE)),
        Check("yb.class2", "class (II) solves the mCYBE", yb(lambda: cat.euclid_class(2), YBClass.MCYBE)),
        Check("yb.class3", "class (III) solves the CYBE for all a_ij", yb(lambda: cat.euclid_class(3), YBClass.CYBE)),
        Check("yb.euclid.dd", "Euclidean DD r' solves the mCYBE",
              yb(lambda: canonical_r(_euclid_double()).skew, YBClass.MCYBE)),
    ]

    def delta_table(n):
        def fn(ctx):
            L = cat.euclid3()
            got, table = coboundary_delta(L, cat.euclid_class(n)), cat.euclid_class_delta(n)
            bad = [g for g in L.basis if got[g] != table[g]]
            cocycle = cocycle_defect(L, got).is_zero
            return not bad and cocycle, {"mismatched": bad, "cocycle": cocycle}
        return fn

    for n, roman in ((1, "I"), (2, "II"), (3, "III")):
        checks.append(Check(f"delta.class{n}", f"class ({roman}) cocommutator table, including delta_a", delta_table(n)))

    def fields(ctx):
        chart = euclid_chart()
        worst = 0.0
        for q in ctx.plan().generate(chart):
            fs = invariant_fields(chart, q)
            L, R = euclid_reference_fields(q)
            worst = max(worst, float(np.abs(fs.left - L).max()), float(np.abs(fs.right - R).max()))
        return worst < ctx.tol, {}, {"max_deviation": worst}

    checks.append(Check("fields.euclid3", "closed-form left/right invariant fields of E(3)", fields))

    def phs2(ctx):
        rep = verify_phs(euclid_chart(), cat.euclid_class(2), cat.EUCLID_PHS[2], ctx.plan(), tol=ctx.tol)
        return rep.passed, {}, {f"{i},{j}": v for (i, j), v in rep.deviations.items()}

    def phs2_mixed(ctx):
        chart = euclid_chart()
        _, mats = sample_poisson(chart, cat.euclid_class(2), ctx.plan())
        mixed = float(np.abs(mats[:, :3, 3:]).max())
        angles = float(np.abs(mats[:, 3:, 3:]).max())
        return max(mixed, angles) < ctx.tol, {}, {"x,theta": mixed, "theta,theta": angles}

    def phs1(a, r):
        def fn(ctx):
            params = {"alpha": a, "rho": r, "a12": 0, "a13": 0, "a23": 0}
            rep = verify_phs(euclid_chart(), cat.euclid_class(1), cat.EUCLID_PHS[1], ctx.plan(), params, ctx.tol)
            return rep.passed, {"params": {"alpha": a, "rho": r}}, {f"{i},{j}": v for (i, j), v in rep.deviations.items()}
        return fn

    def fit2(ctx):
        fit = fit_bracket(euclid_chart(), cat.euclid_class(2), plan=ctx.plan(), tol=ctx.tol)
        expected = cat.EUCLID_PHS[2].table()
        got = fit.target.table()
        same = all(sp.expand(got[k] - expected[k]) == 0 for k in expected)
        jac = all(v == 0 for v in jacobiator(fit.target).values())
        return same and jac, {"fitted": fit.to_dict()["brackets"], "jacobiator_zero": jac}, {"fit": fit.residual}

    checks += [
        Check("phs.euclid3.class2", "{x^i, x^j} = 2 eps_ijk x^k", phs2),
        Check("phs.euclid3.class2.mixed", "{x^i, theta^j} = {theta^i, theta^j} = 0", phs2_mixed),
        Check("phs.euclid3.class1.a1r0", "class (I) Poisson space at (alpha, rho) = (1, 0)", phs1(1, 0)),
        Check("phs.euclid3.class1.a0r1", "class (I) Poisson space at (alpha, rho) = (0, 1)", phs1(0, 1)),
        Check("phs.euclid3.class1.a1r1", "class (I) Poisson space at (alpha, rho) = (1, 1)", phs1(1, 1)),
        Check("fit.euclid3.class2", "fitted class (II) table is 2 eps_ijk x^k with zero Jacobiator", fit2),
    ]
    return checks


# --------------------------------------------------------------------------
# poincare suite


def match_family(fitted: cat.PoissonTarget, family: cat.PoissonTarget) -> dict | None:
    """Parameter values placing a fitted table inside a parametric family."""
    syms = fitted.symbols()
    unknowns = [sp.Symbol(p) for p in family.parameters]
    got, want = fitted.table(), family.table()
    equations = []
    for key, expr in want.items():
        diff = sp.expand(got.get(key, sp.Integer(0)) - expr)
        equations += sp.Poly(diff, *syms).coeffs() if diff != 0 else []
    if not equations:
        return {}
    sol = sp.solve(equations, unknowns, dict=True)
    if not sol:
        return None
    return {str(k): str(v) for k, v in sol[0].items()}


def _poincare_checks() -> list[Check]:
    checks = _algebra_checks("poincare21", cat.poincare21)
    L = cat.poincare21()

    def table1(n):
        def fn(ctx):
            r = cat.poincare_case(n)
            delta = coboundary_delta(L, r)
            got = coisotropy_classify(delta, L.subspace(("J", "K1", "K2"), subalgebra=True))
            expected, klass = cat.POINCARE_TABLE1[n]
            cocycle = cocycle_defect(L, delta).is_zero
            yb = classify_yb(L, r)
            return got.value == expected and cocycle, {
                "coisotropy": got.value, "expected": expected, "cocycle": cocycle,
                "yb": yb.value, "class": klass,
            }
        return fn

    for n in range(8):
        checks.append(Check(f"table1.case{n}", f"Poincaré DD case {n}: coisotropy of delta_D(h) is "
                            f"{cat.POINCARE_TABLE1[n][0]}", table1(n)))

    def linear(n):
        def fn(ctx):
            target = cat.POINCARE_TABLE2[n]
            params = dict(target.presets.get("dd", {}))
            out, ok = {}, True
            for order in ("mirrored", "reversed"):
                rep = verify_phs(poincare_chart(order), cat.poincare_case(n), target, ctx.plan(), params, ctx.tol)
                ok = ok and rep.passed
                out[order] = rep.max_deviation
            details = {"params": params} if params else {}
            return ok, details, out
        return fn

    for n in (0, 2, 6, 7):
        checks.append(Check(f"phs.poincare21.case{n}", f"Poisson Minkowski spacetime of case {n}", linear(n)))

    def quadratic(ctx):
        family = cat.POINCARE_TABLE2[1]
        details, residuals, matched = {}, {}, True
        for order in ("mirrored", "reversed"):
            fit = fit_bracket(poincare_chart(order), cat.poincare_case(1), plan=ctx.plan(), tol=ctx.tol)
            sol = match_family(fit.target, family)
            dd = sol is not None and sol.get("alpha1") == sol.get("beta1")
            matched = matched and dd
            details[order] = {"fitted": fit.to_dict()["brackets"], "family_parameters": sol, "alpha1_eq_beta1": dd}
            residuals[order] = fit.residual
        if not matched:
            details["note"] = "chart-dependent: fitted table lies outside the alpha1 = beta1 family"
            return CHART_DEPENDENT, details, residuals
        return PASS, details, residuals

    checks.append(Check("phs.poincare21.case1", "quadratic Poisson Minkowski spacetime of case 1", quadratic))

    def fits_jacobi(ctx):
        details, ok = {}, True
        for n in range(8):
            params = {"lam": 1.0} if n in (3, 4, 5) else None
            try:
                fit = fit_bracket(poincare_chart(), cat.poincare_case(n), plan=ctx.plan(), params=params, tol=ctx.tol)
            except BracketNotPolynomial as exc:
                details[f"case{n}"] = f"not polynomial (residual {exc.residual:.2e})"
                continue
            jac = all(v == 0 for v in jacobiator(fit.target).values())
            ok = ok and jac
            details[f"case{n}"] = "jacobiator zero" if jac else "jacobiator nonzero"
        return ok, details

    checks.append(Check("fit.poincare21.jacobi", "fitted Minkowski brackets satisfy the Jacobi identity", fits_jacobi))
    return checks


# --------------------------------------------------------------------------
# so(3,1) contraction suite


def _so31_checks() -> list[Check]:
    checks = _algebra_checks("so31", cat.so31)

    def cs_jacobi(builder):
        def fn(ctx):
            d = jacobi_defect(builder())
            return d.is_zero, {"witness": d.describe()[:3]}
        return fn

    def iso(builder):
        def fn(ctx):
            bad = builder().bracket_defect()
            return not bad, {"defects": bad}
        return fn

    def pullback(case):
        def fn(ctx):
            from .catalog import apply_iso

            m = cat.csiso() if case in "AC" else cat.csiso2()
            back = apply_iso(m, cat.so31_cs_rmatrix(case))
            return back == cat.so31_rmatrix(case), {"cs_terms": _terms(cat.so31_cs_rmatrix(case))}
        return fn

    checks += [
        Check("algebra.so31.cs_ac.jacobi", "Chern-Simons basis of so(3,1) (cases A, C)", cs_jacobi(cat.so31_cs_ac)),
        Check("algebra.so31.cs_bd.jacobi", "Chern-Simons basis of so(3,1) (cases B, D)", cs_jacobi(cat.so31_cs_bd)),
        Check("iso.csiso", "Chern-Simons to geometric basis map, cases A and C", iso(cat.csiso)),
        Check("iso.csiso2", "Chern-Simons to geometric basis map J_s -> J_s+1, cases B and D", iso(cat.csiso2)),
    ]
    checks += [Check(f"iso.pullback.{c}", f"r'_{c} is the image of its Chern-Simons form", pullback(c)) for c in "ABCD"]

    def contract_alg(ctx):
        return contract_algebra(cat.so31()) == cat.euclid3(), {}

    def contract_cas(ctx):
        E = contract_algebra(cat.so31())
        ok = all(cat.casimir(E, c) == cat.casimir(cat.euclid3(), c) for c in ("C1", "C2"))
        return ok, {}

    checks += [
        Check("contract.algebra", "so(3,1) contracts to e(3) as kappa -> 0", contract_alg),
        Check("contract.casimirs", "so(3,1) Casimirs contract to the e(3) Casimirs", contract_cas),
    ]

    def limit(case):
        def fn(ctx):
            n, reference = cat.SO31_LIMITS[case]
            r = cat.so31_rmatrix(case)
            lim = scaled_limit(r, n)
            expected = reference(cat.euclid3())
            auto_n, _ = auto_scale(r)
            a, b, c = grade_decompose(lim, *(lim.algebra.subspace(lim.algebra.metadata[k]) for k in ("h", "t")))
            if case == "B":
                shape = a.is_zero() and c.is_zero() and b == cat.euclid_class(2) / 2
                klass = "II"
            else:
                shape = b.is_zero() and c.is_zero()
                klass = "III"
            # decompose-then-contract equals contract-then-decompose
            h, t = (cat.so31().subspace(cat.so31().metadata[k]) for k in ("h", "t"))
            commutes = all(
                _limit_or_zero(part, n) == q for part, q in zip(grade_decompose(r, h, t), (a, b, c))
            )
            ok = lim == expected and auto_n == n and shape and commutes
            return ok, {"n": n, "auto_n": auto_n, "limit": _terms(lim), "class": klass, "commutes": commutes}
        return fn

    for case in "ABCD":
        n = cat.SO31_LIMITS[case][0]
        checks.append(Check(f"limit.{case}", f"kappa^{n} r'_{case} -> reference Euclidean limit", limit(case)))

    def pairing_free(case):
        def fn(ctx):
            G = cat.so31_pairing(case)
            free = all("kappa" not in str(v.as_expr()) for v in G.terms.values())
            return free, {"pairing": {f"{G.algebra.basis[a]},{G.algebra.basis[b]}": _s(v)
                                      for (a, b), v in sorted(G.terms.items())}}
        return fn

    def pairing_d(ctx):
        try:
            scaled_limit(cat.so31_pairing("D"), 0)
        except DivergentLimit as exc:
            return True, {"pole_order": exc.pole_order}
        return False, {"error": "limit unexpectedly finite"}

    def cybe(case):
        def fn(ctx):
            from .bialgebra import cybe_tensor

            L = cat.so31()
            full = cat.so31_rmatrix(case).expand() + cat.so31_casimir_part(case)
            return cybe_tensor(L, full).is_zero(), {}
        return fn

    for case in "ABC":
        checks.append(Check(f"pairing.{case}", f"pairing of case {case} does not depend on kappa", pairing_free(case)))
    checks.append(Check("pairing.D", "pairing of case D diverges as kappa -> 0", pairing_d))
    for case in "ABCD":
        checks.append(Check(f"pairing.{case}.cybe", f"r'_{case} completed by its Casimir solves the CYBE", cybe(case)))
    return checks


def _limit_or_zero(x, n):
    if x.is_zero():
        return scaled_limit(x, 0)
    return scaled_limit(x, n)


# --------------------------------------------------------------------------


_BUILDERS = {"euclid": _euclid_checks, "poincare": _poincare_checks, "so31-contraction": _so31_checks}


def suite_checks(name: str) -> list[Check]:
    if name == "all":
        return [c for key in ("euclid", "poincare", "so31-contraction") for c in _BUILDERS[key]()]
    if name not in _BUILDERS:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    return _BUILDERS[name]()


def run_suite(
    name: str,
    seed: int = DEFAULT_SEED,
    tol: float | None = None,
    points: int = DEFAULT_POINTS,
    workers: int = 1,
) -> VerificationReport:
    checks = suite_checks(name)
    ctx = Context(seed, default_tolerance() if tol is None else tol, points)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            records = list(pool.map(lambda c: c.run(ctx), checks))
    else:
        records = [c.run(ctx) for c in checks]
    records.sort(key=lambda r: r.id)
    return VerificationReport(
        name, seed, ctx.tol, points, records, toolchain_stamp(),
        datetime.now(timezone.utc).isoformat(timespec="seconds"),
    )
