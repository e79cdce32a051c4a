"""Drinfel'd doubles assembled from a pair of structure tensors."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Mapping, NamedTuple, Sequence

import sympy as sp

from .algebra import (
    Bivector,
    JacobiError,
    LieAlgebra,
    StructureError,
    Tensor,
    Vector,
    bracket,
    jacobi_defect,
)
from .bialgebra import Cocommutator, coboundary_delta
from .scalars import FIELD, Scalar, to_scalar


class MatchedPairError(JacobiError):
    """The mixed brackets of the double violate the Jacobi identity."""


@dataclass(frozen=True)
class DoubleSpec:
    """Structure constants of g (``c[(i, j)] = {k: c^k_ij}``) and of its dual
    (``f[(i, j)] = {k: f^ij_k}``), indexed by integers or by ``g_names``."""

    dim: int
    c: Mapping
    f: Mapping
    g_names: Sequence[str] | None = None
    dual_names: Sequence[str] | None = None
    field: object = dc_field(default=FIELD, compare=False)

    def names(self) -> tuple[tuple[str, ...], tuple[str, ...]]:
        g = tuple(self.g_names or (f"Y{i + 1}" for i in range(self.dim)))
        y = tuple(self.dual_names or (f"y{i + 1}" for i in range(self.dim)))
        if len(g) != self.dim or len(y) != self.dim:
            raise StructureError("basis name lists must have length dim")
        return g, y

    def _table(self, data: Mapping, names: Sequence[str]) -> list[list[dict[int, Scalar]]]:
        def idx(k):
            return k if isinstance(k, int) else list(names).index(k)

        d = self.dim
        table = [[{} for _ in range(d)] for _ in range(d)]
        for (a, b), row in data.items():
            i, j = idx(a), idx(b)
            for k, v in row.items():
                v = to_scalar(v, self.field)
                if not v:
                    continue
                table[i][j][idx(k)] = v
                table[j][i][idx(k)] = -v
        return table

    def c_table(self):
        return self._table(self.c, self.names()[0])

    def f_table(self):
        return self._table(self.f, self.names()[0])

    def g_algebra(self, check: bool = True) -> LieAlgebra:
        g, _ = self.names()
        return _from_table(g, self.c_table(), "g", self.field, check)

    def dual_algebra(self, check: bool = True) -> LieAlgebra:
        _, y = self.names()
        return _from_table(y, self.f_table(), "g*", self.field, check)

    def cocommutator(self) -> Cocommutator:
        """delta(Y_n) = f_n^lm Y_l (x) Y_m on g (Jacobi of g not rechecked)."""
        L = self.g_algebra(check=False)
        f = self.f_table()
        return Cocommutator.from_dual_structure(
            L, {n: {(l, m): f[l][m][n] for l in range(self.dim) for m in range(self.dim) if n in f[l][m]}
                for n in range(self.dim)}
        )


def _from_table(names, table, name, field, check) -> LieAlgebra:
    brackets = {(i, j): table[i][j] for i in range(len(names)) for j in range(i + 1, len(names))}
    return LieAlgebra(names, brackets, name=name, field=field, check=check)


class CanonicalR(NamedTuple):
    full: Tensor
    skew: Bivector


@dataclass(frozen=True, eq=False)
class DrinfeldDouble:
    algebra: LieAlgebra
    spec: DoubleSpec
    pairing_matrix: Tensor

    @property
    def g(self) -> tuple[int, ...]:
        return tuple(range(self.spec.dim))

    @property
    def dual(self) -> tuple[int, ...]:
        return tuple(range(self.spec.dim, 2 * self.spec.dim))


def double_brackets(spec: DoubleSpec) -> dict:
    """Brackets of the double on indices (Y_1..Y_d, y^1..y^d).

    [Y_i, Y_j] = c^k_ij Y_k,  [y^i, y^j] = f^ij_k y^k,
    [y^i, Y_j] = c^i_jk y^k - f^ik_j Y_k.
    """
    d = spec.dim
    c, f = spec.c_table(), spec.f_table()
    brackets: dict = {}
    for i in range(d):
        for j in range(d):
            if i < j:
                brackets[(i, j)] = dict(c[i][j])
                brackets[(d + i, d + j)] = {d + k: v for k, v in f[i][j].items()}
            row: dict = {}
            for k in range(d):
                v = c[j][k].get(i)
                if v:
                    row[d + k] = row.get(d + k, 0) + v
                w = f[i][k].get(j)
                if w:
                    row[k] = row.get(k, 0) - w
            brackets[(d + i, j)] = row
    return brackets


def assemble_double(spec: DoubleSpec, names: Sequence[str] | None = None) -> DrinfeldDouble:
    """Build the 2d-dimensional double with basis (Y_1..Y_d, y^1..y^d)."""
    d = spec.dim
    g, y = spec.names()
    basis = tuple(names) if names else g + y
    if len(basis) != 2 * d:
        raise StructureError("the double needs 2*dim basis names")
    spec.g_algebra(check=True)
    spec.dual_algebra(check=True)
    L = LieAlgebra(basis, double_brackets(spec), name="double", field=spec.field, check=False)
    defect = jacobi_defect(L)
    if not defect.is_zero:
        i, j, k = defect.witness
        raise MatchedPairError(
            f"not a matched pair: Jacobi fails on ({basis[i]}, {basis[j]}, {basis[k]})",
            defect.witness,
        )
    G = {}
    for i in range(d):
        G[(i, d + i)] = 1
        G[(d + i, i)] = 1
    return DrinfeldDouble(L, spec, L.tensor(G, rank=2))


def pairing(D: DrinfeldDouble, u: Vector, v: Vector) -> Scalar:
    """The canonical form <y^i, Y_j> = delta^i_j, zero on g x g and g* x g*."""
    return bilinear(D.pairing_matrix, u, v)


def bilinear(G: Tensor, u: Vector, v: Vector) -> Scalar:
    total = G.algebra.field.zero
    for (a, b), w in G.terms.items():
        total += u.coeffs[a] * w * v.coeffs[b]
    return total


def associativity_check(D: DrinfeldDouble) -> bool:
    return invariant_form_check(D.algebra, D.pairing_matrix)


def invariant_form_check(L: LieAlgebra, G: Tensor) -> bool:
    """<[X,Y],Z> = <X,[Y,Z]> on all basis triples."""
    e = [L.basis_vector(i) for i in range(L.dim)]
    for a in e:
        for b in e:
            ab = bracket(L, a, b)
            for c in e:
                if bilinear(G, ab, c) != bilinear(G, a, bracket(L, b, c)):
                    return False
    return True


def canonical_r(D: DrinfeldDouble) -> CanonicalR:
    """r = sum y^i (x) Y_i and r' = r - r_21 = sum y^i ^ Y_i."""
    d = D.spec.dim
    r = D.algebra.tensor({(d + i, i): 1 for i in range(d)}, rank=2)
    skew = Bivector.from_tensor(r - r.flip())
    return CanonicalR(r, skew)


def canonical_casimir(D: DrinfeldDouble) -> Tensor:
    """C = 1/2 sum (y^i Y_i + Y_i y^i) as a symmetric tensor."""
    r = canonical_r(D).full
    return (r + r.flip()) / 2


def delta_on_double(D: DrinfeldDouble) -> Cocommutator:
    return coboundary_delta(D.algebra, canonical_r(D).full)


def pairing_from_casimir(C: Tensor) -> Tensor:
    """Pairing matrix G with canonical Casimir ``C``: C has matrix (1/2) G^-1."""
    L = C.algebra
    if C.rank != 2 or not (C - C.flip()).is_zero():
        raise StructureError("a Casimir tensor must be symmetric of rank 2")
    M = sp.Matrix(L.dim, L.dim, lambda a, b: C[(a, b)].as_expr())
    if sp.simplify(M.det()) == 0:
        raise StructureError("Casimir tensor is degenerate")
    inv = M.inv()
    terms = {}
    for a in range(L.dim):
        for b in range(L.dim):
            v = sp.cancel(inv[a, b] / 2)
            if v != 0:
                terms[(a, b)] = to_scalar(v, L.field)
    return Tensor(L, 2, terms)


def euclidean_spec() -> DoubleSpec:
    """(so(3), delta = 0): c = eps_ijk, f = 0, with Y_i = J_i and y^i = P_i."""
    c = {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}}
    return DoubleSpec(3, c, {}, g_names=("J1", "J2", "J3"), dual_names=("P1", "P2", "P3"))
