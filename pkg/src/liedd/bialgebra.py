"""Cocommutators, Schouten brackets and the classifications built on them."""
from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Mapping, Sequence

from .algebra import (
    Bivector,
    JacobiDefect,
    LieAlgebra,
    StructureError,
    Subspace,
    Tensor,
    Trivector,
    _Alternating,
    ad_invariant,
    structure_jacobi,
)
from .scalars import Scalar, format_scalar


@dataclass(frozen=True, eq=False)
class Cocommutator:
    """Linear map g -> g^g given by its values on the basis."""

    algebra: LieAlgebra
    images: tuple

    def __post_init__(self):
        if len(self.images) != self.algebra.dim:
            raise StructureError("a cocommutator needs one bivector per basis element")

    @classmethod
    def from_dual_structure(cls, L: LieAlgebra, f: Mapping) -> "Cocommutator":
        """From ``f[n] = {(l, m): f_n^lm}`` meaning delta(Y_n) = f_n^lm Y_l (x) Y_m.

        ``f_n^lm`` is antisymmetric in (l, m); either one or both orderings
        may be listed, but they must agree.
        """
        images = []
        for n in range(L.dim):
            terms = f.get(n, f.get(L.basis[n], {}))
            coeffs: dict = {}
            for (l, m), v in terms.items():
                l, m = L.index(l), L.index(m)
                v = L.scalar(v)
                if l == m:
                    if v:
                        raise StructureError("dual structure constants must be antisymmetric")
                    continue
                key, v = ((l, m), v) if l < m else ((m, l), -v)
                if key in coeffs and coeffs[key] != v:
                    raise StructureError("dual structure constants must be antisymmetric")
                coeffs[key] = v
            images.append(Bivector(L, coeffs))
        return cls(L, tuple(images))

    @classmethod
    def from_images(cls, L: LieAlgebra, images: Mapping) -> "Cocommutator":
        """From ``{generator: Bivector or {(a, b): coeff}}``; missing generators map to 0."""
        out = [Bivector(L)] * L.dim
        for key, value in images.items():
            if not isinstance(value, Bivector):
                value = L.bivector(value)
            out[L.index(key)] = value
        return cls(L, tuple(out))

    @classmethod
    def zero(cls, L: LieAlgebra) -> "Cocommutator":
        return cls(L, tuple(Bivector(L) for _ in range(L.dim)))

    def __getitem__(self, key) -> Bivector:
        return self.images[self.algebra.index(key)]

    def __call__(self, X) -> Bivector:
        """Extend linearly to a Vector."""
        out = Bivector(self.algebra)
        for i, c in enumerate(X.coeffs):
            if c:
                out = out + self.images[i] * c
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, Cocommutator):
            return NotImplemented
        return all(a == b for a, b in zip(self.images, other.images))

    __hash__ = object.__hash__

    def is_zero(self) -> bool:
        return all(b.is_zero() for b in self.images)

    def dual_structure(self) -> list[list[dict[int, Scalar]]]:
        """``table[l][m] = {n: f_n^lm}``: brackets of the dual basis."""
        L = self.algebra
        table = [[{} for _ in range(L.dim)] for _ in range(L.dim)]
        for n, image in enumerate(self.images):
            for (l, m), v in image.terms.items():
                table[l][m][n] = v
                table[m][l][n] = -v
        return table

    def __repr__(self) -> str:
        lines = [f"δ({name}) = {img!r}" for name, img in zip(self.algebra.basis, self.images)]
        return "\n".join(lines)


def _as_tensor(L: LieAlgebra, r) -> Tensor:
    if isinstance(r, _Alternating):
        r = r.expand()
    if not isinstance(r, Tensor) or r.rank != 2:
        raise StructureError("expected a Bivector or a rank-2 Tensor")
    if r.algebra.dim != L.dim:
        raise StructureError("r-matrix is not over this algebra")
    return Tensor(L, 2, r.terms)


def coboundary_delta(L: LieAlgebra, r) -> Cocommutator:
    """delta(X) = [X (x) 1 + 1 (x) X, r] on every basis element.

    A full tensor ``r`` is accepted when its symmetric part is
    ad-invariant; otherwise the images are not skew and this raises.
    """
    T = _as_tensor(L, r)
    images = []
    for n in range(L.dim):
        image = T.ad(n)
        if not (image + image.flip()).is_zero():
            raise StructureError(
                f"delta({L.basis[n]}) is not skew: the symmetric part of r is not ad-invariant"
            )
        images.append(Bivector.from_tensor(image))
    return Cocommutator(L, tuple(images))


@dataclass(frozen=True)
class CocycleDefect:
    """Nonzero defects keyed by basis pairs (i < j)."""

    entries: dict
    basis: tuple

    @property
    def is_zero(self) -> bool:
        return not self.entries

    @property
    def witness(self) -> tuple[int, int] | None:
        return min(self.entries) if self.entries else None

    def describe(self) -> list[str]:
        return [f"({self.basis[i]}, {self.basis[j]}): {v!r}" for (i, j), v in sorted(self.entries.items())]


def cocycle_defect(L: LieAlgebra, delta: Cocommutator) -> CocycleDefect:
    """delta([X,Y]) - [delta(X), Y(x)1 + 1(x)Y] - [X(x)1 + 1(x)X, delta(Y)] on basis pairs."""
    if delta.algebra.dim != L.dim:
        raise StructureError("cocommutator is not over this algebra")
    expanded = [Tensor(L, 2, img.expand().terms) for img in delta.images]
    entries = {}
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = Tensor.zero(L, 2)
            for k, c in L._c[i][j].items():
                lhs = lhs + expanded[k] * c
            # [delta(X), Y(x)1 + 1(x)Y] = -ad_Y delta(X)
            rhs = expanded[j].ad(i) - expanded[i].ad(j)
            diff = lhs - rhs
            if not diff.is_zero():
                entries[(i, j)] = Bivector.from_tensor(diff)
    return CocycleDefect(entries, L.basis)


def dual_jacobi_defect(delta: Cocommutator) -> JacobiDefect:
    L = delta.algebra
    return JacobiDefect(structure_jacobi(L.dim, delta.dual_structure(), L.field.zero), L.basis)


def dual_jacobi(delta: Cocommutator) -> bool:
    """Whether the transpose of delta is a Lie bracket on the dual space."""
    return dual_jacobi_defect(delta).is_zero


def cybe_tensor(L: LieAlgebra, r) -> Tensor:
    """[r12, r13] + [r12, r23] + [r13, r23] as a rank-3 tensor."""
    T = _as_tensor(L, r)
    c = L._c
    out: dict = {}
    zero = L.field.zero
    items = list(T.terms.items())
    for (a, b), v in items:
        for (e, d), w in items:
            vw = v * w
            for k, s in c[a][e].items():
                key = (k, b, d)
                out[key] = out.get(key, zero) + s * vw
            for k, s in c[b][e].items():
                key = (a, k, d)
                out[key] = out.get(key, zero) + s * vw
            for k, s in c[b][d].items():
                key = (a, e, k)
                out[key] = out.get(key, zero) + s * vw
    return Tensor(L, 3, {k: v for k, v in out.items() if v})


def schouten(L: LieAlgebra, r: Bivector, s: Bivector | None = None) -> Trivector:
    """[[r, r]], or the mixed bracket [[r, s]] by polarisation."""
    if s is None:
        return Trivector.from_tensor(cybe_tensor(L, r))
    return (schouten(L, r + s) - schouten(L, r) - schouten(L, s)) / 2


class YBClass(str, enum.Enum):
    CYBE = "CYBE"
    MCYBE = "mCYBE"
    NONE = "None"


def classify_yb(L: LieAlgebra, r: Bivector) -> YBClass:
    s = schouten(L, r)
    if s.is_zero():
        return YBClass.CYBE
    if ad_invariant(L, s):
        return YBClass.MCYBE
    return YBClass.NONE


class CoisotropyClass(str, enum.Enum):
    ZERO = "Zero"
    POISSON_SUBGROUP = "PoissonSubgroup"
    COISOTROPIC = "Coisotropic"
    NON_COISOTROPIC = "NonCoisotropic"


def coisotropy_classify(delta: Cocommutator, h: Subspace) -> CoisotropyClass:
    """Strongest of delta(h) = 0, delta(h) in h^h, delta(h) in h^g."""
    if h.algebra.dim != delta.algebra.dim:
        raise StructureError("subspace and cocommutator live in different algebras")
    if not h.is_closed():
        raise StructureError("coisotropy is only defined for a subalgebra")
    inside = set(h.indices)
    keys = [key for i in h.indices for key in delta.images[i].terms]
    if not keys:
        return CoisotropyClass.ZERO
    if all(set(key) <= inside for key in keys):
        return CoisotropyClass.POISSON_SUBGROUP
    if all(set(key) & inside for key in keys):
        return CoisotropyClass.COISOTROPIC
    return CoisotropyClass.NON_COISOTROPIC


def grade_decompose(r: Bivector, h: Subspace, t: Subspace) -> tuple[Bivector, Bivector, Bivector]:
    """Split r = a + b + c with a in t^t, b in t^h, c in h^h."""
    L = r.algebra
    hs, ts = set(h.indices), set(t.indices)
    if hs & ts or hs | ts != set(range(L.dim)):
        raise StructureError("h and t must be complementary sets of basis vectors")
    a, b, c = {}, {}, {}
    for key, v in r.terms.items():
        n_h = sum(i in hs for i in key)
        (a, b, c)[n_h][key] = v
    return Bivector(L, a), Bivector(L, b), Bivector(L, c)


class NotInClassificationForm(ValueError):
    def __init__(self, message: str, residual: Trivector):
        super().__init__(f"{message}; residual {residual!r}")
        self.residual = residual


@dataclass(frozen=True)
class StachuraInvariants:
    p: Scalar
    mu: Scalar
    bc: Trivector
    cc: Trivector

    @property
    def violations(self) -> list[str]:
        out = []
        if not self.bc.is_zero():
            out.append(f"[[b,c]] = {self.bc!r}")
        if not self.cc.is_zero():
            out.append(f"[[c,c]] = {self.cc!r}")
        return out

    def __iter__(self):
        return iter((self.p, self.mu))

    def __str__(self) -> str:
        return f"p = {format_scalar(self.p)}, mu = {format_scalar(self.mu)}"


def translation_volume(t: Subspace) -> Trivector:
    """Reference element of the top wedge power of t (unit coefficient)."""
    if len(t.indices) != 3:
        raise StructureError("the reference volume needs a 3-dimensional t")
    return Trivector.from_terms(t.algebra, {t.indices: 1})


def mixed_reference(h: Subspace, t: Subspace) -> Trivector:
    """Half the Schouten square of b = sum t_i ^ h_i (paired in order)."""
    L = h.algebra
    b = L.bivector({(ti, hi): 1 for ti, hi in zip(t.indices, h.indices)})
    return schouten(L, b) / 2


def _proportionality(x: Trivector, ref: Trivector, what: str) -> Scalar:
    key = min(ref.terms)
    factor = x.terms.get(key, x.algebra.field.zero) / ref.terms[key]
    residual = x - ref * factor
    if not residual.is_zero():
        raise NotInClassificationForm(f"{what} is not proportional to its reference element", residual)
    return factor


def stachura_invariants(
    r: Bivector, h: Subspace | None = None, t: Subspace | None = None
) -> StachuraInvariants:
    """(p, mu) from [[a,b]] = p vol and 2[[a,c]] + [[b,b]] = mu Omega.

    Defaults to the rotation/translation splitting recorded in the
    algebra's metadata.
    """
    L = r.algebra
    h = h or L.subspace(L.metadata["h"])
    t = t or L.subspace(L.metadata["t"])
    a, b, c = grade_decompose(r, h, t)
    ab = schouten(L, a, b)
    second = schouten(L, a, c) * 2 + schouten(L, b)
    p = _proportionality(ab, translation_volume(t), "[[a,b]]")
    mu = _proportionality(second, mixed_reference(h, t), "2[[a,c]] + [[b,b]]")
    return StachuraInvariants(p, mu, schouten(L, b, c), schouten(L, c))


def symmetric_casimir_tensor(L: LieAlgebra, quadratic: Sequence[tuple]) -> Tensor:
    """Symmetrised tensor of ``sum coeff * X Y`` given as (coeff, X, Y) triples."""
    out = Tensor.zero(L, 2)
    for coeff, x, y in quadratic:
        t = L.tensor({(x, y): coeff}, rank=2)
        out = out + t.symmetric_part()
    return out
