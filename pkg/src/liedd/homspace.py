"""Group charts, invariant vector fields and Sklyanin brackets (numeric).

A chart is an ordered product g = exp(q^1 X_1) ... exp(q^n X_n) in a faithful
matrix representation.  Left/right-invariant frames come from the
Maurer-Cartan coefficients

    g^-1 dg/dq^mu = sum_a L[a, mu] X_a,     dg/dq^mu g^-1 = sum_a R[a, mu] X_a,

so that X^L_a = sum_mu inv(L)[mu, a] d/dq^mu (and likewise for R).
"""
from __future__ import annotations

import itertools
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
import scipy.linalg
import sympy as sp

from .algebra import Bivector, LieAlgebra, StructureError
from .catalog import PoissonTarget, euclid3, poincare21
from .scalars import to_float

DEFAULT_TOL = 1e-9
DEFAULT_SEED = 20181009
DEFAULT_POINTS = 100
ANGLE_MARGIN = 1e-3


class ChartSingularityError(ArithmeticError):
    pass


class BracketNotPolynomial(ValueError):
    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


# --------------------------------------------------------------------------
# representation and chart


@dataclass(frozen=True, eq=False)
class MatrixRep:
    """Rational matrices for each generator; commutators checked exactly."""

    algebra: LieAlgebra
    matrices: Mapping[str, sp.Matrix]
    signature: str = ""

    def __post_init__(self):
        missing = set(self.algebra.basis) - set(self.matrices)
        if missing:
            raise StructureError(f"representation lacks {sorted(missing)}")
        bad = self.fidelity_defect()
        if bad:
            raise StructureError(f"matrices do not represent {self.algebra.name}: {bad}")

    def fidelity_defect(self) -> list[str]:
        L, M = self.algebra, self.matrices
        out = []
        for i, a in enumerate(L.basis):
            for j in range(i + 1, L.dim):
                b = L.basis[j]
                comm = M[a] * M[b] - M[b] * M[a]
                expected = sp.zeros(*comm.shape)
                for k, c in L.structure(i, j).items():
                    expected += sp.Rational(str(c.as_expr())) * M[L.basis[k]]
                if comm != expected:
                    out.append(f"[{a}, {b}]")
        return out

    def numeric(self, name: str) -> np.ndarray:
        return np.array(self.matrices[name].evalf(), dtype=float)

    @property
    def size(self) -> int:
        return next(iter(self.matrices.values())).shape[0]


def _unit(n: int, i: int, j: int, v: int = 1) -> sp.Matrix:
    m = sp.zeros(n, n)
    m[i, j] = v
    return m


def euclid_rep() -> MatrixRep:
    """Q = x^i P_i + theta^i J_i acting on (1, x^1, x^2, x^3)."""
    mats = {f"P{i}": _unit(4, i, 0) for i in (1, 2, 3)}
    mats["J1"] = _unit(4, 3, 2) - _unit(4, 2, 3)
    mats["J2"] = _unit(4, 1, 3) - _unit(4, 3, 1)
    mats["J3"] = _unit(4, 2, 1) - _unit(4, 1, 2)
    return MatrixRep(euclid3(), mats, "euclidean (+,+,+)")


def poincare_rep() -> MatrixRep:
    """Generators acting on (1, x^0, x^1, x^2); Lorentz block preserves diag(+,-,-)."""
    mats = {f"P{i}": _unit(4, i + 1, 0) for i in (0, 1, 2)}
    mats["J"] = _unit(4, 3, 2) - _unit(4, 2, 3)
    mats["K1"] = _unit(4, 2, 1) + _unit(4, 1, 2)
    mats["K2"] = _unit(4, 3, 1) + _unit(4, 1, 3)
    return MatrixRep(poincare21(), mats, "minkowski (+,-,-)")


def _exp_kind(X: np.ndarray) -> str:
    X2 = X @ X
    X3 = X2 @ X
    if np.allclose(X2, 0):
        return "nilpotent"
    if np.allclose(X3, -X):
        return "rotation"
    if np.allclose(X3, X):
        return "boost"
    return "general"


@dataclass(frozen=True, eq=False)
class GroupChart:
    """g = prod exp(q^mu X_mu) over ``factors = [(generator, coordinate), ...]``."""

    rep: MatrixRep
    factors: tuple[tuple[str, str], ...]
    translations: tuple[str, ...] = ()
    _mats: tuple = dc_field(default=(), repr=False)
    _kinds: tuple = dc_field(default=(), repr=False)

    def __post_init__(self):
        gens = [g for g, _ in self.factors]
        if sorted(gens) != sorted(self.rep.algebra.basis):
            raise StructureError("a chart needs exactly one factor per generator")
        mats = tuple(self.rep.numeric(g) for g in gens)
        object.__setattr__(self, "_mats", mats)
        object.__setattr__(self, "_kinds", tuple(_exp_kind(m) for m in mats))
        basis = np.stack([self.rep.numeric(g).ravel() for g in self.algebra.basis], axis=1)
        object.__setattr__(self, "_basis", basis)

    @property
    def algebra(self) -> LieAlgebra:
        return self.rep.algebra

    @property
    def coordinates(self) -> tuple[str, ...]:
        return tuple(c for _, c in self.factors)

    def reordered(self, factors: Sequence[tuple[str, str]]) -> "GroupChart":
        return GroupChart(self.rep, tuple(factors), self.translations)

    def point(self, values: Mapping[str, float] | Sequence[float]) -> np.ndarray:
        if isinstance(values, Mapping):
            return np.array([float(values.get(c, 0.0)) for c in self.coordinates])
        q = np.asarray(values, dtype=float)
        if q.shape != (len(self.factors),):
            raise StructureError(f"expected {len(self.factors)} coordinates")
        return q

    def factor(self, mu: int, q: float) -> np.ndarray:
        X, kind = self._mats[mu], self._kinds[mu]
        n = X.shape[0]
        if kind == "nilpotent":
            return np.eye(n) + q * X
        if kind == "rotation":
            return np.eye(n) + math.sin(q) * X + (1 - math.cos(q)) * (X @ X)
        if kind == "boost":
            return np.eye(n) + math.sinh(q) * X + (math.cosh(q) - 1) * (X @ X)
        return scipy.linalg.expm(q * X)

    def decompose(self, M: np.ndarray) -> np.ndarray:
        """Coefficients of an algebra-valued matrix in the representation basis."""
        coeffs, *_ = np.linalg.lstsq(self._basis, M.ravel(), rcond=None)
        return coeffs


def euclid_chart() -> GroupChart:
    """exp(x^1 P1) exp(x^2 P2) exp(x^3 P3) exp(th^1 J1) exp(th^2 J2) exp(th^3 J3)."""
    factors = (("P1", "x1"), ("P2", "x2"), ("P3", "x3"), ("J1", "th1"), ("J2", "th2"), ("J3", "th3"))
    return GroupChart(euclid_rep(), factors, ("x1", "x2", "x3"))


def poincare_chart(order: str = "mirrored") -> GroupChart:
    """Translations first, then J, K1, K2 (``mirrored``) or K2, K1, J (``reversed``)."""
    lorentz = [("J", "th"), ("K1", "xi1"), ("K2", "xi2")]
    if order == "reversed":
        lorentz = lorentz[::-1]
    elif order != "mirrored":
        raise ValueError(f"unknown chart order {order!r}")
    factors = (("P0", "x0"), ("P1", "x1"), ("P2", "x2"), *lorentz)
    return GroupChart(poincare_rep(), factors, ("x0", "x1", "x2"))


def group_element(chart: GroupChart, point) -> np.ndarray:
    q = chart.point(point)
    g = np.eye(chart.rep.size)
    for mu, qm in enumerate(q):
        g = g @ chart.factor(mu, qm)
    return g


# --------------------------------------------------------------------------
# invariant fields


@dataclass(frozen=True)
class FieldSample:
    """``left[a, mu]``: d/dq^mu component of X^L_a; same layout for ``right``."""

    point: np.ndarray
    left: np.ndarray
    right: np.ndarray
    maurer_cartan_left: np.ndarray
    maurer_cartan_right: np.ndarray
    generators: tuple[str, ...]
    coordinates: tuple[str, ...]

    def component(self, side: str, generator: str, coordinate: str) -> float:
        frame = self.left if side == "L" else self.right
        return float(frame[self.generators.index(generator), self.coordinates.index(coordinate)])


def invariant_fields(chart: GroupChart, point, cond_limit: float = 1e10) -> FieldSample:
    """Left and right frames at ``point`` from closed-form factor derivatives."""
    q = chart.point(point)
    n = len(q)
    F = [chart.factor(mu, qm) for mu, qm in enumerate(q)]
    Finv = [chart.factor(mu, -qm) for mu, qm in enumerate(q)]
    size = chart.rep.size
    prefix = [np.eye(size)]
    for f in F:
        prefix.append(prefix[-1] @ f)
    prefix_inv = [np.eye(size)]
    for f in Finv:
        prefix_inv.append(f @ prefix_inv[-1])
    suffix = [np.eye(size)] * (n + 1)
    suffix_inv = [np.eye(size)] * (n + 1)
    for mu in range(n - 1, -1, -1):
        suffix[mu] = F[mu] @ suffix[mu + 1]
        suffix_inv[mu] = suffix_inv[mu + 1] @ Finv[mu]
    d = chart.algebra.dim
    mc_left = np.zeros((d, n))
    mc_right = np.zeros((d, n))
    for mu, X in enumerate(chart._mats):
        # d g / d q^mu = prefix[mu] X suffix[mu]
        mc_left[:, mu] = chart.decompose(suffix_inv[mu] @ X @ suffix[mu])
        mc_right[:, mu] = chart.decompose(prefix[mu] @ X @ prefix_inv[mu])
    for M, side in ((mc_left, "left"), (mc_right, "right")):
        if np.linalg.cond(M) > cond_limit:
            raise ChartSingularityError(f"{side} frame is singular at {dict(zip(chart.coordinates, q))}")
    # generator order of the algebra basis, coordinate order of the chart
    left = np.linalg.inv(mc_left).T
    right = np.linalg.inv(mc_right).T
    return FieldSample(q, left, right, mc_left, mc_right, chart.algebra.basis, chart.coordinates)


def euclid_reference_fields(point) -> tuple[np.ndarray, np.ndarray]:
    """Closed-form X^L, X^R of the Euclidean chart, laid out like FieldSample.

    Rows follow (J1, J2, J3, P1, P2, P3), columns (x1, x2, x3, th1, th2, th3).
    """
    x1, x2, x3, t1, t2, t3 = (float(v) for v in point)
    s1, c1, s2, c2, s3, c3 = math.sin(t1), math.cos(t1), math.sin(t2), math.cos(t2), math.sin(t3), math.cos(t3)
    L = np.zeros((6, 6))
    L[0, 3:] = (c3 / c2, s3, -c3 * s2 / c2)
    L[1, 3:] = (-s3 / c2, c3, s3 * s2 / c2)
    L[2, 5] = 1.0
    L[3, :3] = (c2 * c3, s1 * s2 * c3 + c1 * s3, -(c1 * s2 * c3 - s1 * s3))
    L[4, :3] = (-c2 * s3, -(s1 * s2 * s3 - c1 * c3), c1 * s2 * s3 + s1 * c3)
    L[5, :3] = (s2, -c2 * s1, c2 * c1)
    R = np.zeros((6, 6))
    R[0] = (0, -x3, x2, 1, 0, 0)
    R[1] = (x3, 0, -x1, s1 * s2 / c2, c1, -s1 / c2)
    R[2] = (-x2, x1, 0, -c1 * s2 / c2, s1, c1 / c2)
    R[3:, :3] = np.eye(3)
    return L, R


# --------------------------------------------------------------------------
# Sklyanin bracket


def rmatrix_array(r: Bivector, params: Mapping[str, float] | None = None) -> np.ndarray:
    """Antisymmetric coefficient matrix r^{ab} of the expanded bivector."""
    d = r.algebra.dim
    R = np.zeros((d, d))
    for (a, b), v in r.terms.items():
        x = to_float(v, params)
        R[a, b] += x
        R[b, a] -= x
    return R


def poisson_matrix(chart: GroupChart, r, point, params: Mapping[str, float] | None = None) -> np.ndarray:
    """Pi^{mu nu} = {q^mu, q^nu} = r^{ab} (X^L_a q^mu X^L_b q^nu - X^R_a q^mu X^R_b q^nu)."""
    R = r if isinstance(r, np.ndarray) else rmatrix_array(r, params)
    fs = invariant_fields(chart, point)
    return fs.left.T @ R @ fs.left - fs.right.T @ R @ fs.right


def sklyanin_bracket(chart: GroupChart, r, i: str, j: str, point, params=None) -> float:
    """Sklyanin bracket of two coordinate functions at ``point``."""
    P = poisson_matrix(chart, r, point, params)
    c = chart.coordinates
    return float(P[c.index(i), c.index(j)])


# --------------------------------------------------------------------------
# sampling, verification, fitting


@dataclass(frozen=True)
class SamplePlan:
    points: int = DEFAULT_POINTS
    seed: int = DEFAULT_SEED
    low: float = -1.0
    high: float = 1.0
    fixed: Mapping[str, float] = dc_field(default_factory=dict)

    def generate(self, chart: GroupChart) -> np.ndarray:
        rng = np.random.default_rng(self.seed)
        pts = rng.uniform(self.low, self.high, size=(self.points, len(chart.factors)))
        # stay off the cos(angle) = 0 boundary of Euler-type charts
        bound = math.pi / 2 - ANGLE_MARGIN
        for mu, (gen, coord) in enumerate(chart.factors):
            if coord not in chart.translations:
                pts[:, mu] = np.clip(pts[:, mu], -bound, bound)
            if coord in self.fixed:
                pts[:, mu] = self.fixed[coord]
        return pts


def sample_poisson(chart, r, plan: SamplePlan, params=None, workers: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Points and Poisson matrices for every sampled point."""
    R = rmatrix_array(r, params) if not isinstance(r, np.ndarray) else r
    pts = plan.generate(chart)
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            mats = list(pool.map(lambda p: poisson_matrix(chart, R, p), pts))
    else:
        mats = [poisson_matrix(chart, R, p) for p in pts]
    return pts, np.stack(mats)


@dataclass
class PHSReport:
    deviations: dict
    tolerance: float
    points: int

    @property
    def max_deviation(self) -> float:
        return max(self.deviations.values(), default=0.0)

    @property
    def passed(self) -> bool:
        return bool(self.max_deviation < self.tolerance)

    def to_dict(self) -> dict:
        return {
            "deviations": {f"{i},{j}": float(v) for (i, j), v in self.deviations.items()},
            "max_deviation": float(self.max_deviation),
            "tolerance": self.tolerance,
            "points": self.points,
            "pass": bool(self.passed),
        }


def verify_phs(
    chart: GroupChart,
    r,
    target: PoissonTarget,
    plan: SamplePlan | None = None,
    params: Mapping[str, float] | None = None,
    tol: float = DEFAULT_TOL,
    pairs: Sequence[tuple[str, str]] | None = None,
) -> PHSReport:
    """Max |Sklyanin - target| over the sample for each coordinate pair."""
    plan = plan or SamplePlan()
    params = dict(params or {})
    if not set(target.coordinates) <= set(chart.coordinates):
        raise StructureError("target coordinates are not chart coordinates")
    evaluate = target.evaluator({k: v for k, v in params.items() if k in target.parameters})
    pts, mats = sample_poisson(chart, r, plan, params)
    coords = chart.coordinates
    pairs = list(pairs or target.table().keys())
    dev = {p: 0.0 for p in pairs}
    for q, P in zip(pts, mats):
        expected = evaluate(dict(zip(coords, q)))
        for i, j in pairs:
            got = P[coords.index(i), coords.index(j)]
            dev[(i, j)] = max(dev[(i, j)], abs(got - expected[(i, j)]))
    return PHSReport(dev, tol, plan.points)


def _monomials(n: int, degree: int) -> list[tuple[int, ...]]:
    out = [()]
    for deg in range(1, degree + 1):
        out += list(itertools.combinations_with_replacement(range(n), deg))
    return out


def _rationalize(x: float, tol: float) -> sp.Expr:
    frac = Fraction(x).limit_denominator(1000)
    if abs(float(frac) - x) < tol:
        return sp.Rational(frac.numerator, frac.denominator)
    return sp.Float(x)


@dataclass
class FitResult:
    target: PoissonTarget
    residual: float

    def to_dict(self) -> dict:
        return {
            "brackets": {f"{i},{j}": e for (i, j), e in self.target.brackets.items()},
            "residual": float(self.residual),
        }


def fit_bracket(
    chart: GroupChart,
    r,
    coordinates: Sequence[str] | None = None,
    degree: int = 2,
    plan: SamplePlan | None = None,
    params: Mapping[str, float] | None = None,
    tol: float = DEFAULT_TOL,
) -> FitResult:
    """Least-squares fit of {x^i, x^j} by polynomials of degree <= ``degree``
    in ``coordinates`` (default: the chart's translation coordinates)."""
    coords = tuple(coordinates or chart.translations)
    plan = plan or SamplePlan()
    monos = _monomials(len(coords), degree)
    if plan.points <= len(monos):
        raise ValueError("need more sample points than monomials")
    pts, mats = sample_poisson(chart, r, plan, params)
    cidx = [chart.coordinates.index(c) for c in coords]
    X = pts[:, cidx]
    A = np.stack([np.prod(X[:, list(m)], axis=1) if m else np.ones(len(X)) for m in monos], axis=1)
    syms = [sp.Symbol(c) for c in coords]
    brackets, worst = {}, 0.0
    for a, i in enumerate(coords):
        for j in coords[a + 1:]:
            y = mats[:, chart.coordinates.index(i), chart.coordinates.index(j)]
            coef, *_ = np.linalg.lstsq(A, y, rcond=None)
            resid = float(np.max(np.abs(A @ coef - y))) if len(y) else 0.0
            worst = max(worst, resid)
            expr = sp.Integer(0)
            for m, cval in zip(monos, coef):
                if abs(cval) < tol:
                    continue
                term = _rationalize(float(cval), tol)
                for k in m:
                    term *= syms[k]
                expr += term
            brackets[(i, j)] = str(sp.expand(expr))
    if worst > tol:
        raise BracketNotPolynomial(
            f"Sklyanin bracket is not a polynomial of degree {degree} in {coords} (residual {worst:.3g})",
            worst,
        )
    return FitResult(PoissonTarget(coords, brackets), worst)


def jacobiator(target: PoissonTarget, values: Mapping[str, object] | None = None) -> dict:
    """Symbolic Jacobiator {x,{y,z}} + cyclic of a bracket table on coordinates."""
    coords = target.coordinates
    syms = target.symbols()
    table = target.table(values)

    def br(i, j):
        if i == j:
            return sp.Integer(0)
        return table[(coords[i], coords[j])] if i < j else -table[(coords[j], coords[i])]

    def pb(f, g):
        return sum(
            br(a, b) * sp.diff(f, syms[a]) * sp.diff(g, syms[b])
            for a in range(len(coords))
            for b in range(len(coords))
        )

    out = {}
    for i, j, k in itertools.combinations(range(len(coords)), 3):
        x, y, z = syms[i], syms[j], syms[k]
        out[(coords[i], coords[j], coords[k])] = sp.expand(
            pb(x, pb(y, z)) + pb(y, pb(z, x)) + pb(z, pb(x, y))
        )
    return out
