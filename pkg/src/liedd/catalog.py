"""Concrete algebras, r-matrices, cocommutators, Poisson targets and basis maps.

Entries are built lazily on first lookup and validated against their host
algebra when built.  r-matrices are stored in their reference form, ½ factors
and 1/λ terms included.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

import sympy as sp

from .algebra import (
    Bivector,
    LieAlgebra,
    StructureError,
    Tensor,
    Trivector,
    Vector,
    _Alternating,
    bracket,
)
from .bialgebra import Cocommutator, symmetric_casimir_tensor
from .scalars import FIELD, Scalar, param, to_scalar

KAPPA = param("kappa")
LAM = param("lam")
MU = param("mu")
HALF = FIELD(1) / 2

EPS = {(1, 2): 3, (2, 3): 1, (3, 1): 2}


class CatalogLookupError(KeyError):
    pass


@dataclass(frozen=True)
class PoissonTarget:
    """Closed-form brackets {x^i, x^j} between coordinate functions."""

    coordinates: tuple[str, ...]
    brackets: Mapping[tuple[str, str], str]
    parameters: tuple[str, ...] = ()
    presets: Mapping[str, Mapping[str, object]] = dc_field(default_factory=dict)

    def symbols(self) -> tuple[sp.Symbol, ...]:
        return tuple(sp.Symbol(c) for c in self.coordinates)

    def expr(self, i: str, j: str) -> sp.Expr:
        local = {c: sp.Symbol(c) for c in self.coordinates}
        local.update({p: sp.Symbol(p) for p in self.parameters})
        if (i, j) in self.brackets:
            return sp.sympify(self.brackets[(i, j)], locals=local)
        if (j, i) in self.brackets:
            return -sp.sympify(self.brackets[(j, i)], locals=local)
        return sp.Integer(0)

    def table(self, values: Mapping[str, object] | None = None) -> dict[tuple[str, str], sp.Expr]:
        """Upper-triangular table with parameters substituted."""
        subs = {sp.Symbol(k): sp.nsimplify(v) for k, v in (values or {}).items()}
        out = {}
        for a, i in enumerate(self.coordinates):
            for j in self.coordinates[a + 1:]:
                out[(i, j)] = sp.expand(self.expr(i, j).subs(subs))
        return out

    def evaluator(self, values: Mapping[str, object] | None = None) -> Callable:
        """f(point) -> {pair: float}, ``point`` a mapping of coordinate values."""
        table = self.table(values)
        free = set().union(*(e.free_symbols for e in table.values())) - set(self.symbols())
        if free:
            raise ValueError(f"unset parameters {sorted(map(str, free))}")
        syms = self.symbols()
        funcs = {k: sp.lambdify(syms, e, "math") for k, e in table.items()}

        def evaluate(point: Mapping[str, float]) -> dict:
            args = [point[c] for c in self.coordinates]
            return {k: float(f(*args)) for k, f in funcs.items()}

        return evaluate


class BasisIso:
    """Linear map between algebras given on generators; checked to be an isomorphism."""

    def __init__(self, source: LieAlgebra, target: LieAlgebra, images: Mapping, name: str = ""):
        self.source, self.target, self.name = source, target, name
        cols = []
        for gen in source.basis:
            if gen not in images:
                raise StructureError(f"no image given for {gen}")
            img = images[gen]
            if not isinstance(img, Vector):
                img = target.vector(img)
            cols.append(img)
        self.images = tuple(cols)
        if source.dim != target.dim:
            raise StructureError("isomorphism between algebras of different dimension")
        matrix = sp.Matrix([[c.as_expr() for c in v.coeffs] for v in self.images]).T
        if sp.simplify(matrix.det()) == 0:
            raise StructureError(f"{name or 'basis map'} is not invertible")
        self._matrix = matrix
        defect = self.bracket_defect()
        if defect:
            raise StructureError(f"{name or 'basis map'} does not preserve brackets: {defect[0]}")

    def __repr__(self) -> str:
        return f"BasisIso({self.name}: {self.source.name} -> {self.target.name})"

    def accepts(self, L: LieAlgebra) -> bool:
        return L is self.source or L == self.source

    def vector(self, X: Vector) -> Vector:
        if not self.accepts(X.algebra):
            raise StructureError("vector is not over the source algebra")
        out = self.target.zero()
        for c, img in zip(X.coeffs, self.images):
            if c:
                out = out + img * c
        return out

    def bracket_defect(self) -> list[str]:
        out = []
        S = self.source
        for i in range(S.dim):
            for j in range(i + 1, S.dim):
                lhs = self.vector(bracket(S, S.basis_vector(i), S.basis_vector(j)))
                rhs = bracket(self.target, self.images[i], self.images[j])
                if lhs != rhs:
                    out.append(f"[{S.basis[i]}, {S.basis[j]}]")
        return out

    def inverse(self) -> "BasisIso":
        inv = self._matrix.inv()
        images = {}
        for j, gen in enumerate(self.target.basis):
            images[gen] = self.source.vector([to_scalar(sp.cancel(inv[i, j]), self.source.field)
                                              for i in range(self.source.dim)])
        return BasisIso(self.target, self.source, images, name=f"{self.name}^-1")


def apply_iso(iso: BasisIso, x):
    """Push a Vector, Bivector, Trivector or Tensor forward along ``iso``."""
    if isinstance(x, Vector):
        return iso.vector(x)
    if isinstance(x, _Alternating):
        return type(x).from_tensor(apply_iso(iso, x.expand()))
    if isinstance(x, Tensor):
        if not iso.accepts(x.algebra):
            raise StructureError("tensor is not over the source algebra")
        out = Tensor.zero(iso.target, x.rank)
        T = iso.target
        for key, v in x.terms.items():
            factors = [iso.images[i] for i in key]
            terms = {(): v}
            for vec in factors:
                terms = {
                    k + (a,): c * ca
                    for k, c in terms.items()
                    for a, ca in enumerate(vec.coeffs)
                    if ca
                }
            out = out + Tensor(T, x.rank, terms)
        return out
    if isinstance(x, LieAlgebra):
        raise StructureError("apply_iso acts on elements; compare algebras with BasisIso.bracket_defect")
    raise StructureError(f"cannot push forward {type(x).__name__}")


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    kind: str
    payload: object
    citation: str
    parameters: tuple[str, ...] = ()
    notes: str = ""


# --------------------------------------------------------------------------
# algebras


def _euclidean_brackets(pp: Scalar | int = 0) -> dict:
    br = {}
    for (i, j), k in EPS.items():
        br[(f"J{i}", f"J{j}")] = {f"J{k}": 1}
        br[(f"J{i}", f"P{j}")] = {f"P{k}": 1}
        br[(f"J{j}", f"P{i}")] = {f"P{k}": -1}
        if pp:
            br[(f"P{i}", f"P{j}")] = {f"J{k}": pp}
    return br


ROT_TRANS = {"h": ("J1", "J2", "J3"), "t": ("P1", "P2", "P3")}


@lru_cache(maxsize=None)
def euclid3() -> LieAlgebra:
    return LieAlgebra(
        ("J1", "J2", "J3", "P1", "P2", "P3"),
        _euclidean_brackets(),
        name="e(3)",
        metadata={**ROT_TRANS, "casimirs": {
            "C1": [(1, "P1", "P1"), (1, "P2", "P2"), (1, "P3", "P3")],
            "C2": [(1, "J1", "P1"), (1, "J2", "P2"), (1, "J3", "P3")],
        }},
    )


@lru_cache(maxsize=None)
def so31() -> LieAlgebra:
    k2 = KAPPA**2
    return LieAlgebra(
        ("J1", "J2", "J3", "P1", "P2", "P3"),
        _euclidean_brackets(-k2),
        name="so(3,1)",
        metadata={**ROT_TRANS, "contraction_parameter": "kappa", "curvature": "-kappa**2, kappa = 1/R",
                  "casimirs": {
                      "C1": [(1, "P1", "P1"), (1, "P2", "P2"), (1, "P3", "P3"),
                             (-k2, "J1", "J1"), (-k2, "J2", "J2"), (-k2, "J3", "J3")],
                      "C2": [(1, "J1", "P1"), (1, "J2", "P2"), (1, "J3", "P3")],
                  }},
    )


_CS_BASIS = ("J0", "J1", "J2", "P0", "P1", "P2")
_EPS3 = {(0, 1): 2, (1, 2): 0, (2, 0): 1}


def _cs_brackets(metric: Sequence[int]) -> dict:
    """[J_a,J_b] = e_abc J^c, [J_a,P_b] = e_abc P^c, [P_a,P_b] = -kappa^2 e_abc J^c."""
    br = {}
    for (a, b), c in _EPS3.items():
        s = metric[c]
        br[(f"J{a}", f"J{b}")] = {f"J{c}": s}
        br[(f"J{a}", f"P{b}")] = {f"P{c}": s}
        br[(f"J{b}", f"P{a}")] = {f"P{c}": -s}
        br[(f"P{a}", f"P{b}")] = {f"J{c}": -s * KAPPA**2}
    return br


@lru_cache(maxsize=None)
def so31_cs_ac() -> LieAlgebra:
    """Chern-Simons basis compatible with the cases A/C map (index raised with diag(-1,1,1))."""
    return LieAlgebra(_CS_BASIS, _cs_brackets((-1, 1, 1)), name="so(3,1) CS basis (A, C)")


@lru_cache(maxsize=None)
def so31_cs_bd() -> LieAlgebra:
    """Chern-Simons basis compatible with the cases B/D shift map (Euclidean index raising)."""
    return LieAlgebra(_CS_BASIS, _cs_brackets((1, 1, 1)), name="so(3,1) CS basis (B, D)")


@lru_cache(maxsize=None)
def poincare21() -> LieAlgebra:
    br = {
        ("J", "K1"): {"K2": 1}, ("J", "K2"): {"K1": -1}, ("K1", "K2"): {"J": -1},
        ("J", "P1"): {"P2": 1}, ("J", "P2"): {"P1": -1},
        ("K1", "P0"): {"P1": 1}, ("K1", "P1"): {"P0": 1},
        ("K2", "P0"): {"P2": 1}, ("K2", "P2"): {"P0": 1},
    }
    return LieAlgebra(
        ("J", "K1", "K2", "P0", "P1", "P2"),
        br,
        name="p(2+1)",
        metadata={"h": ("J", "K1", "K2"), "t": ("P0", "P1", "P2"), "casimirs": {
            "C1": [(1, "P0", "P0"), (-1, "P1", "P1"), (-1, "P2", "P2")],
            "C2": [(1, "J", "P0"), (1, "K2", "P1"), (-1, "K1", "P2")],
        }},
    )


def casimir(L: LieAlgebra, name: str) -> Tensor:
    return symmetric_casimir_tensor(L, L.metadata["casimirs"][name])


# --------------------------------------------------------------------------
# r-matrices


def _wedges(L: LieAlgebra, terms: Iterable[tuple]) -> Bivector:
    """Bivector from (coeff, a, b) triples meaning coeff * a ^ b."""
    out: dict = {}
    for coeff, a, b in terms:
        key = (a, b)
        out[key] = out.get(key, FIELD.zero) + to_scalar(coeff, L.field)
    return L.bivector(out)


def _scaled(s, terms):
    return [(s * to_scalar(c), a, b) for c, a, b in terms]


def poincare_case(n: int) -> Bivector:
    L = poincare21()
    h = HALF
    table = {
        0: _scaled(h, [(-1, "P0", "J"), (-1, "P1", "K2"), (1, "P2", "K1")]),
        1: [(1, "K1", "J"), (1, "K1", "K2"), (-1, "P0", "J"), (-1, "P1", "K2"), (1, "P2", "K1")],
        2: [(1, "P2", "J"), (-1, "P0", "K2"), (-1, "P2", "K2")]
        + _scaled(h, [(1, "P0", "J"), (-1, "P1", "K2"), (1, "P2", "K1")]),
        3: [(-1, "P2", "J"), (-1, "P0", "K2"), (-1, "P2", "K2")]
        + _scaled(h, [(-1, "P0", "J"), (1, "P1", "K2"), (-1, "P2", "K1")])
        + _scaled(1 / LAM, [(1, "P0", "P1"), (2, "P0", "P2"), (2, "P2", "P1")]),
        4: [(1, "P2", "J")]
        + _scaled(h, [(1, "P0", "J"), (-1, "P1", "K2"), (1, "P2", "K1")])
        + [(LAM, "P0", "P2")],
        5: [(1, "P1", "J")]
        + _scaled(h, [(-1, "P0", "J"), (1, "P1", "K2"), (-1, "P2", "K1")])
        + [(1 / LAM, "P1", "P0")],
        6: [(1, "P0", "K2")] + _scaled(h, [(-1, "P0", "J"), (1, "P1", "K2"), (1, "P2", "K1")]),
        7: [(1, "P2", "J")] + _scaled(h, [(-1, "P0", "J"), (1, "P1", "K2"), (-1, "P2", "K1")]),
    }
    if n not in table:
        raise CatalogLookupError(f"no Poincaré case {n}")
    return _wedges(L, table[n])


# expected delta_D(h) coisotropy class and Stachura class per case
POINCARE_TABLE1 = {
    0: ("Zero", "(IV)"),
    1: ("PoissonSubgroup", "(I)"),
    2: ("Coisotropic", "(IIa)"),
    3: ("NonCoisotropic", "(IIa)"),
    4: ("NonCoisotropic", "(IIIb)"),
    5: ("NonCoisotropic", "(IIIb)"),
    6: ("Coisotropic", "(IIIb)"),
    7: ("Coisotropic", "(IIIb)"),
}


def euclid_a_part(L: LieAlgebra | None = None) -> Bivector:
    L = L or euclid3()
    return _wedges(L, [(param("a12"), "P1", "P2"), (param("a13"), "P1", "P3"), (param("a23"), "P2", "P3")])


def euclid_class(n: int) -> Bivector:
    """Stachura classes I-III with a = a12 P1^P2 + a13 P1^P3 + a23 P2^P3."""
    L = euclid3()
    alpha, rho = param("alpha"), param("rho")
    if n == 1:
        b = _wedges(L, [(alpha, "P1", "J2"), (-alpha, "P2", "J1"), (rho, "P3", "J3")])
        return euclid_a_part(L) + b
    if n == 2:
        return _wedges(L, [(1, "P1", "J1"), (1, "P2", "J2"), (1, "P3", "J3")])
    if n == 3:
        return euclid_a_part(L)
    raise CatalogLookupError(f"no Euclidean class {n}")


def euclid_class_delta(n: int) -> Cocommutator:
    """Reference cocommutator tables."""
    L = euclid3()
    a12, a13, a23 = (param(x) for x in ("a12", "a13", "a23"))
    alpha, rho = param("alpha"), param("rho")
    delta_a = {
        "J1": [(-a13, "P1", "P2"), (a12, "P1", "P3")],
        "J2": [(-a23, "P1", "P2"), (a12, "P2", "P3")],
        "J3": [(-a23, "P1", "P3"), (a13, "P2", "P3")],
    }
    if n == 2:
        images = {"P1": [(2, "P2", "P3")], "P2": [(-2, "P1", "P3")], "P3": [(2, "P1", "P2")]}
    elif n == 3:
        images = delta_a
    elif n == 1:
        images = {
            "J1": [(-alpha, "P3", "J1"), (alpha, "P1", "J3"), (-rho, "P3", "J2"), (-rho, "P2", "J3")]
            + delta_a["J1"],
            "J2": [(-alpha, "P3", "J2"), (alpha, "P2", "J3"), (rho, "P3", "J1"), (rho, "P1", "J3")]
            + delta_a["J2"],
            "J3": delta_a["J3"],
            "P1": [(alpha, "P1", "P3"), (rho, "P2", "P3")],
            "P2": [(alpha, "P2", "P3"), (-rho, "P1", "P3")],
        }
    else:
        raise CatalogLookupError(f"no Euclidean class {n}")
    return Cocommutator.from_images(L, {g: _wedges(L, t) for g, t in images.items()})


def so31_rmatrix(case: str) -> Bivector:
    L = so31()
    k, h = KAPPA, HALF
    table = {
        "A": [(1 / k, "P3", "P2")] + _scaled(h, [(1, "P1", "J1"), (-1, "P2", "J2"), (-1, "P3", "J3")]),
        "B": [(-k, "J2", "J3")] + _scaled(h, [(1, "P1", "J1"), (1, "P2", "J2"), (1, "P3", "J3")]),
        "C": _scaled(h, [(1 / k, "P3", "P1"), (k, "J1", "J3"), (1, "P2", "J2")]),
        "D": [(1, "J1", "P2"), (-1, "J2", "P1"), ((1 + MU**2) / (2 * MU), "P3", "J3")]
        + _scaled((MU**2 - 1) / (2 * k * MU), [(k**2, "J1", "J2"), (-1, "P1", "P2")]),
    }
    if case not in table:
        raise CatalogLookupError(f"no so(3,1) case {case!r}")
    return _wedges(L, table[case])


# Printed kappa -> 0 limits with their scaling powers.
SO31_LIMITS = {
    "A": (1, lambda L: _wedges(L, [(1, "P3", "P2")])),
    "B": (0, lambda L: _wedges(L, _scaled(HALF, [(1, "P1", "J1"), (1, "P2", "J2"), (1, "P3", "J3")]))),
    "C": (1, lambda L: _wedges(L, [(HALF, "P3", "P1")])),
    "D": (1, lambda L: _wedges(L, [((1 - MU**2) / (2 * MU), "P1", "P2")])),
}

# Coefficients (s1, s2) of the Casimir tensor s1*C1 + s2*C2 that completes each
# so(3,1) r-matrix to a solution of the CYBE.
SO31_CASIMIR_COEFFS = {
    "A": (FIELD.zero, FIELD.one),
    "B": (FIELD.zero, FIELD.one),
    "C": (FIELD.zero, FIELD.one),
    "D": (1 / KAPPA, (MU**2 - 1) / MU),
}


def so31_casimir_part(case: str) -> Tensor:
    L = so31()
    s1, s2 = SO31_CASIMIR_COEFFS[case]
    return casimir(L, "C1") * s1 + casimir(L, "C2") * s2


def so31_pairing(case: str) -> Tensor:
    """Invariant pairing matrix whose canonical Casimir is the symmetric part of r."""
    from .double import pairing_from_casimir

    return pairing_from_casimir(so31_casimir_part(case))


# --------------------------------------------------------------------------
# isomorphisms


@lru_cache(maxsize=None)
def csiso() -> BasisIso:
    k = KAPPA
    return BasisIso(
        so31_cs_ac(),
        so31(),
        {
            "J0": {"J1": -1},
            "J1": {"P3": 1 / k},
            "J2": {"P2": 1 / k},
            "P0": {"P1": 1},
            "P1": {"J3": k},
            "P2": {"J2": k},
        },
        name="csiso",
    )


@lru_cache(maxsize=None)
def csiso2() -> BasisIso:
    return BasisIso(
        so31_cs_bd(),
        so31(),
        {f"{g}{s}": {f"{g}{s + 1}": 1} for g in "JP" for s in range(3)},
        name="csiso2",
    )


def so31_cs_rmatrix(case: str) -> Bivector:
    """r-matrix of a case expressed in its Chern-Simons basis (pulled back)."""
    iso = csiso() if case in ("A", "C") else csiso2()
    return apply_iso(iso.inverse(), so31_rmatrix(case))


# --------------------------------------------------------------------------
# Poisson targets

_POINCARE_COORDS = ("x0", "x1", "x2")
_EUCLID_COORDS = ("x1", "x2", "x3")

POINCARE_TABLE2 = {
    0: PoissonTarget(_POINCARE_COORDS, {("x0", "x1"): "-x2", ("x0", "x2"): "x1", ("x1", "x2"): "x0"}),
    1: PoissonTarget(
        _POINCARE_COORDS,
        {
            ("x0", "x1"): "-alpha1*x2*(x0 + x1) + 2*beta1*x2",
            ("x0", "x2"): "alpha1*x1*(x0 + x1) - 2*beta1*x1",
            ("x1", "x2"): "alpha1*x0*(x0 + x1) - 2*beta1*x0",
        },
        parameters=("alpha1", "beta1"),
        presets={"dd": {"alpha1": -1, "beta1": -1}},
    ),
    2: PoissonTarget(
        _POINCARE_COORDS,
        {("x0", "x1"): "0", ("x0", "x2"): "-alpha2*(x0 - x2)", ("x1", "x2"): "-beta2*(x0 - x2)"},
        parameters=("alpha2", "beta2"),
        presets={"dd": {"alpha2": -1, "beta2": -1}},
    ),
    6: PoissonTarget(_POINCARE_COORDS, {("x0", "x1"): "0", ("x0", "x2"): "-x0 + x1", ("x1", "x2"): "0"}),
    7: PoissonTarget(_POINCARE_COORDS, {("x0", "x1"): "0", ("x0", "x2"): "0", ("x1", "x2"): "-(x0 + x2)"}),
}

EUCLID_PHS = {
    2: PoissonTarget(_EUCLID_COORDS, {("x1", "x2"): "2*x3", ("x1", "x3"): "-2*x2", ("x2", "x3"): "2*x1"}),
    1: PoissonTarget(
        _EUCLID_COORDS,
        {("x1", "x2"): "0", ("x1", "x3"): "alpha*x1 - rho*x2", ("x2", "x3"): "alpha*x2 + rho*x1"},
        parameters=("alpha", "rho"),
    ),
}


# --------------------------------------------------------------------------
# registry


def _entries() -> dict[str, Callable[[], CatalogEntry]]:
    reg: dict[str, Callable[[], CatalogEntry]] = {}

    def add(id_, kind, build, citation, params=(), notes=""):
        reg[id_] = lambda: CatalogEntry(id_, kind, build(), citation, tuple(params), notes)

    add("euclid3", "algebra", euclid3, "Euclidean algebra e(3) = iso(3), rotations J_i, translations P_i")
    add("poincare21", "algebra", poincare21, "Poincaré algebra p(2+1), kinematical basis")
    add("so31", "algebra", so31, "so(3,1) in the geometric basis, [P_i,P_j] = -kappa^2 eps_ijk J_k", ["kappa"])
    add("so31.cs_ac", "algebra", so31_cs_ac, "so(3,1) Chern-Simons basis used with the cases A/C map", ["kappa"],
        notes="bracket form fixed by requiring csiso to be an isomorphism")
    add("so31.cs_bd", "algebra", so31_cs_bd, "so(3,1) Chern-Simons basis used with the cases B/D map", ["kappa"],
        notes="bracket form fixed by requiring csiso2 to be an isomorphism")
    for alg, builder in (("euclid3", euclid3), ("poincare21", poincare21), ("so31", so31)):
        for c in ("C1", "C2"):
            add(f"{alg}.{c}", "casimir", (lambda b=builder, c=c: casimir(b(), c)),
                f"quadratic Casimir {c} of {alg}", ["kappa"] if alg == "so31" else [])
    for n in range(8):
        coiso, klass = POINCARE_TABLE1[n]
        add(f"poincare21.case{n}", "rmatrix", (lambda n=n: poincare_case(n)),
            f"Poincaré DD r-matrix, case {n}; delta_D(h): {coiso}; class {klass}",
            ["lam"] if n in (3, 4, 5) else [])
    add("euclid3.dd", "rmatrix", lambda: euclid_class(2), "Euclidean DD r' = r - C2 = sum P_i ^ J_i")
    for n, params in ((1, ["alpha", "rho", "a12", "a13", "a23"]), (2, []), (3, ["a12", "a13", "a23"])):
        roman = "I" * n
        add(f"euclid3.class{n}", "rmatrix", (lambda n=n: euclid_class(n)),
            f"Euclidean r-matrix, class ({roman})", params)
        add(f"euclid3.class{n}.delta", "cocommutator", (lambda n=n: euclid_class_delta(n)),
            f"cocommutator of class ({roman})", params)
    for case in "ABCD":
        params = ["kappa", "mu"] if case == "D" else ["kappa"]
        add(f"so31.r{case}", "rmatrix", (lambda c=case: so31_rmatrix(c)),
            f"so(3,1) DD r-matrix r'_{case}", params)
        add(f"so31.r{case}.cs", "rmatrix", (lambda c=case: so31_cs_rmatrix(c)),
            f"so(3,1) DD r-matrix r'_{case} in the Chern-Simons basis", params,
            notes="pulled back along the inverse basis map")
        add(f"so31.r{case}.limit", "rmatrix", (lambda c=case: SO31_LIMITS[c][1](euclid3())),
            f"reference contraction limit of kappa^{SO31_LIMITS[case][0]} r'_{case}", ["mu"] if case == "D" else [])
        add(f"so31.r{case}.pairing", "pairing", (lambda c=case: so31_pairing(c)),
            f"invariant pairing of DD case {case}", params,
            notes="inverse of the Casimir completing r' to a CYBE solution")
    for n, target in POINCARE_TABLE2.items():
        add(f"poincare21.case{n}.phs", "poisson", (lambda t=target: t),
            f"Poisson Minkowski spacetime, case {n}", target.parameters)
    for n, target in EUCLID_PHS.items():
        add(f"euclid3.class{n}.phs", "poisson", (lambda t=target: t),
            f"Poisson Euclidean space, class ({'I' * n})", target.parameters)
    add("iso.csiso", "iso", csiso, "CS basis -> geometric basis, cases A and C", ["kappa"])
    add("iso.csiso2", "iso", csiso2, "CS basis -> geometric basis, cases B and D (J_s -> J_s+1)", ["kappa"])
    return reg


_REGISTRY = _entries()


@lru_cache(maxsize=None)
def get(entry_id: str) -> CatalogEntry:
    try:
        build = _REGISTRY[entry_id]
    except KeyError:
        raise CatalogLookupError(f"unknown catalog entry {entry_id!r}") from None
    return build()


def list_entries(kind: str | None = None, prefix: str = "") -> list[str]:
    ids = [i for i in _REGISTRY if i.startswith(prefix)]
    if kind is None:
        return ids
    return [i for i in ids if get(i).kind == kind]


def host_algebra(entry_id: str) -> LieAlgebra:
    """Algebra an entry lives in."""
    payload = get(entry_id).payload
    if isinstance(payload, LieAlgebra):
        return payload
    if isinstance(payload, (Bivector, Trivector, Tensor, Vector, Cocommutator)):
        return payload.algebra
    if isinstance(payload, BasisIso):
        return payload.source
    root = entry_id.split(".")[0]
    return get(root).payload
