"""Structure-constant Lie algebras and their tensor algebra.

Tensors are stored sparsely as ``{index tuple: Scalar}`` with zero entries
dropped.  Alternating tensors (``Bivector``, ``Trivector``) keep only strictly
increasing index tuples and use the unnormalised wedge

    a ^ b = a (x) b - b (x) a,

so that ``P1 ^ J1`` expands to ``P1 (x) J1 - J1 (x) P1``.
"""
from __future__ import annotations

import itertools
import operator
from dataclasses import dataclass, field as dc_field
from typing import Iterable, Iterator, Mapping, Sequence

from sympy.polys.fields import FracField

from .scalars import FIELD, Scalar, format_scalar, to_scalar


class StructureError(ValueError):
    """Raised on shape or algebra mismatches."""


class JacobiError(ValueError):
    """Raised when structure constants fail the Jacobi identity."""

    def __init__(self, message: str, witness: tuple[int, int, int] | None = None):
        super().__init__(message)
        self.witness = witness


def _clean(terms: Mapping, field: FracField) -> dict:
    out = {}
    for key, value in terms.items():
        value = to_scalar(value, field)
        if value:
            out[key] = value
    return out


def _permutation_sign(seq: Sequence[int]) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


class LieAlgebra:
    """Finite-dimensional Lie algebra given by structure constants.

    ``brackets`` maps basis pairs ``(i, j)`` (indices or names) to
    ``{k: coefficient}`` so that ``[e_i, e_j] = sum_k c^k_ij e_k``.  Only one
    of ``(i, j)``/``(j, i)`` needs to be given; antisymmetry fills the other
    and conflicting entries are rejected.
    """

    def __init__(
        self,
        basis: Sequence[str],
        brackets: Mapping,
        name: str = "",
        field: FracField = FIELD,
        check: bool = True,
        metadata: Mapping | None = None,
    ):
        self.basis = tuple(basis)
        if len(set(self.basis)) != len(self.basis):
            raise StructureError(f"duplicate basis names in {self.basis}")
        self.name = name
        self.field = field
        self.metadata = dict(metadata or {})
        d = len(self.basis)
        table: list[list[dict[int, Scalar]]] = [[{} for _ in range(d)] for _ in range(d)]
        seen: dict[tuple[int, int], dict[int, Scalar]] = {}
        for (a, b), coeffs in brackets.items():
            i, j = self.index(a), self.index(b)
            row = {self.index(k): v for k, v in coeffs.items()}
            row = _clean(row, field)
            if i == j:
                if row:
                    raise StructureError(f"[{self.basis[i]}, {self.basis[i]}] must vanish")
                continue
            if (j, i) in seen:
                if seen[(j, i)] != {k: -v for k, v in row.items()}:
                    raise StructureError(
                        f"brackets for ({self.basis[i]}, {self.basis[j]}) are not antisymmetric"
                    )
                continue
            seen[(i, j)] = row
            table[i][j] = row
            table[j][i] = {k: -v for k, v in row.items()}
        self._c = table
        if check:
            defect = jacobi_defect(self)
            if not defect.is_zero:
                i, j, k = defect.witness
                raise JacobiError(
                    f"Jacobi identity fails for {self.name or 'algebra'} on "
                    f"({self.basis[i]}, {self.basis[j]}, {self.basis[k]})",
                    defect.witness,
                )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __repr__(self) -> str:
        return f"LieAlgebra({self.name or '?'}, basis={list(self.basis)})"

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        if self.basis != other.basis:
            return False
        return all(
            self._c[i][j] == {k: to_scalar(v, self.field) for k, v in other._c[i][j].items()}
            for i in range(self.dim)
            for j in range(self.dim)
        )

    __hash__ = object.__hash__

    def index(self, key) -> int:
        if not isinstance(key, str):
            key = operator.index(key)
            if not 0 <= key < self.dim:
                raise StructureError(f"basis index {key} out of range for dimension {self.dim}")
            return key
        try:
            return self.basis.index(key)
        except ValueError:
            raise StructureError(f"{key!r} is not a basis element of {self.name or self.basis}") from None

    def structure(self, i, j) -> dict[int, Scalar]:
        """``{k: c^k_ij}`` for the basis pair."""
        return self._c[self.index(i)][self.index(j)]

    def structure_items(self) -> Iterator[tuple[int, int, int, Scalar]]:
        for i in range(self.dim):
            for j in range(self.dim):
                for k, v in self._c[i][j].items():
                    yield i, j, k, v

    def scalar(self, value) -> Scalar:
        return to_scalar(value, self.field)

    def __getitem__(self, name) -> "Vector":
        return self.basis_vector(name)

    def basis_vector(self, name) -> "Vector":
        i = self.index(name)
        coeffs = [self.field.zero] * self.dim
        coeffs[i] = self.field.one
        return Vector(self, tuple(coeffs))

    def vector(self, coeffs: Mapping | Sequence) -> "Vector":
        if isinstance(coeffs, Mapping):
            out = [self.field.zero] * self.dim
            for k, v in coeffs.items():
                out[self.index(k)] += self.scalar(v)
            return Vector(self, tuple(out))
        if len(coeffs) != self.dim:
            raise StructureError(f"expected {self.dim} coefficients, got {len(coeffs)}")
        return Vector(self, tuple(self.scalar(v) for v in coeffs))

    def zero(self) -> "Vector":
        return Vector(self, (self.field.zero,) * self.dim)

    def bivector(self, terms: Mapping) -> "Bivector":
        """Bivector from ``{(a, b): coeff}`` meaning ``sum coeff * a ^ b``."""
        return Bivector.from_terms(self, terms)

    def trivector(self, terms: Mapping) -> "Trivector":
        return Trivector.from_terms(self, terms)

    def tensor(self, terms: Mapping, rank: int | None = None) -> "Tensor":
        terms = {tuple(self.index(k) for k in key): v for key, v in terms.items()}
        if rank is None:
            if not terms:
                raise StructureError("rank is required for an empty tensor")
            rank = len(next(iter(terms)))
        return Tensor(self, rank, _clean(terms, self.field))

    def subspace(self, names: Iterable, subalgebra: bool = False) -> "Subspace":
        return Subspace(self, tuple(self.index(n) for n in names), subalgebra=subalgebra)


def bracket(L: LieAlgebra, X: "Vector", Y: "Vector") -> "Vector":
    """Lie bracket of two vectors of ``L``."""
    for v in (X, Y):
        if v.algebra.dim != L.dim:
            raise StructureError("vector dimension does not match the algebra")
    out = [L.field.zero] * L.dim
    for i, xi in enumerate(X.coeffs):
        if not xi:
            continue
        for j, yj in enumerate(Y.coeffs):
            if not yj:
                continue
            w = xi * yj
            for k, c in L._c[i][j].items():
                out[k] += c * w
    return Vector(L, tuple(out))


@dataclass(frozen=True, eq=False)
class Vector:
    algebra: LieAlgebra
    coeffs: tuple

    def __post_init__(self):
        if len(self.coeffs) != self.algebra.dim:
            raise StructureError(
                f"vector has {len(self.coeffs)} coefficients, algebra has dimension {self.algebra.dim}"
            )

    def _check(self, other: "Vector") -> None:
        if other.algebra.dim != self.algebra.dim:
            raise StructureError("vectors live in different algebras")

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector(self.algebra, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Vector") -> "Vector":
        return self + (-other)

    def __neg__(self) -> "Vector":
        return Vector(self.algebra, tuple(-a for a in self.coeffs))

    def __mul__(self, s) -> "Vector":
        s = self.algebra.scalar(s)
        return Vector(self.algebra, tuple(s * a for a in self.coeffs))

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self.algebra.dim == other.algebra.dim and all(
            a == to_scalar(b, a.field) for a, b in zip(self.coeffs, other.coeffs)
        )

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __xor__(self, other: "Vector") -> "Bivector":
        return wedge(self, other)

    def terms(self) -> dict[str, Scalar]:
        return {self.algebra.basis[i]: c for i, c in enumerate(self.coeffs) if c}

    def __repr__(self) -> str:
        return _format_terms({(i,): c for i, c in enumerate(self.coeffs) if c}, self.algebra.basis, "")


def _format_terms(terms: Mapping, basis: Sequence[str], sep: str) -> str:
    if not terms:
        return "0"
    parts = []
    for key in sorted(terms):
        name = sep.join(basis[i] for i in key)
        coeff = terms[key]
        if coeff == 1:
            parts.append(name)
        elif coeff == -1:
            parts.append(f"-{name}")
        else:
            parts.append(f"({format_scalar(coeff)})*{name}")
    return " + ".join(parts).replace("+ -", "- ")


@dataclass(frozen=True, eq=False)
class Tensor:
    """Element of the rank-``rank`` tensor power of an algebra."""

    algebra: LieAlgebra
    rank: int
    terms: dict = dc_field(default_factory=dict)

    @classmethod
    def zero(cls, L: LieAlgebra, rank: int) -> "Tensor":
        return cls(L, rank, {})

    def _check(self, other: "Tensor") -> None:
        if other.algebra.dim != self.algebra.dim or other.rank != self.rank:
            raise StructureError("tensor shapes differ")

    def __add__(self, other: "Tensor") -> "Tensor":
        self._check(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, self.algebra.field.zero) + v
        return Tensor(self.algebra, self.rank, {k: v for k, v in out.items() if v})

    def __neg__(self) -> "Tensor":
        return Tensor(self.algebra, self.rank, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "Tensor") -> "Tensor":
        return self + (-other)

    def __mul__(self, s) -> "Tensor":
        s = self.algebra.scalar(s)
        if not s:
            return Tensor.zero(self.algebra, self.rank)
        return Tensor(self.algebra, self.rank, {k: s * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, s) -> "Tensor":
        return self * (1 / self.algebra.scalar(s))

    def __eq__(self, other) -> bool:
        if isinstance(other, (Bivector, Trivector)):
            other = other.expand()
        if not isinstance(other, Tensor):
            return NotImplemented
        return self.rank == other.rank and (self - other).is_zero()

    __hash__ = object.__hash__

    def is_zero(self) -> bool:
        return not self.terms

    def __getitem__(self, key) -> Scalar:
        key = tuple(self.algebra.index(k) for k in key)
        return self.terms.get(key, self.algebra.field.zero)

    def permute(self, perm: Sequence[int]) -> "Tensor":
        """Tensor with factor positions rearranged: new[key] = old[key o perm^-1]."""
        out = {}
        for key, v in self.terms.items():
            new = [0] * self.rank
            for pos, src in enumerate(perm):
                new[pos] = key[src]
            out[tuple(new)] = v
        return Tensor(self.algebra, self.rank, out)

    def flip(self) -> "Tensor":
        if self.rank != 2:
            raise StructureError("flip is defined for rank 2")
        return self.permute((1, 0))

    def symmetric_part(self) -> "Tensor":
        return (self + self.flip()) / 2

    def antisymmetric_part(self) -> "Bivector":
        """Projection onto the alternating tensors, as a Bivector."""
        if self.rank != 2:
            raise StructureError("antisymmetric_part is defined for rank 2")
        return Bivector.from_tensor(self)

    def ad(self, X) -> "Tensor":
        """Action of ad_X extended by the Leibniz rule."""
        L = self.algebra
        coeffs = X.coeffs if isinstance(X, Vector) else L.basis_vector(X).coeffs
        out: dict = {}
        for x_idx, xv in enumerate(coeffs):
            if not xv:
                continue
            row = L._c[x_idx]
            for key, v in self.terms.items():
                w = xv * v
                for pos, a in enumerate(key):
                    for k, c in row[a].items():
                        new = key[:pos] + (k,) + key[pos + 1:]
                        out[new] = out.get(new, L.field.zero) + c * w
        return Tensor(L, self.rank, {k: v for k, v in out.items() if v})

    def tensor(self, other: "Tensor") -> "Tensor":
        out = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                out[k1 + k2] = v1 * v2
        return Tensor(self.algebra, self.rank + other.rank, out)

    def __repr__(self) -> str:
        return _format_terms(self.terms, self.algebra.basis, "⊗")


class _Alternating:
    """Shared implementation of alternating tensors with sorted-key storage."""

    degree: int

    def __init__(self, algebra: LieAlgebra, terms: Mapping | None = None):
        self.algebra = algebra
        terms = dict(terms or {})
        for key in terms:
            if len(key) != self.degree or list(key) != sorted(set(key)):
                raise StructureError(f"{type(self).__name__} keys must be strictly increasing {self.degree}-tuples")
        self.terms = _clean(terms, algebra.field)

    @classmethod
    def from_terms(cls, L: LieAlgebra, terms: Mapping):
        """Accepts arbitrary index order; repeated indices give zero."""
        out: dict = {}
        for key, v in terms.items():
            idx = tuple(L.index(k) for k in key)
            if len(idx) != cls.degree:
                raise StructureError(f"expected {cls.degree} indices, got {key}")
            if len(set(idx)) < len(idx):
                continue
            sign = _permutation_sign(idx)
            skey = tuple(sorted(idx))
            out[skey] = out.get(skey, L.field.zero) + sign * to_scalar(v, L.field)
        return cls(L, out)

    @classmethod
    def from_tensor(cls, T: Tensor):
        """Alternating projection (1/k!) sum sgn(s) T[s(key)]."""
        if T.rank != cls.degree:
            raise StructureError(f"rank {T.rank} tensor cannot become a {cls.__name__}")
        out: dict = {}
        for key, v in T.terms.items():
            if len(set(key)) < len(key):
                continue
            skey = tuple(sorted(key))
            out[skey] = out.get(skey, T.algebra.field.zero) + _permutation_sign(key) * v
        fact = 1
        for n in range(2, cls.degree + 1):
            fact *= n
        return cls(T.algebra, {k: v / fact for k, v in out.items()})

    def expand(self) -> Tensor:
        out = {}
        for key, v in self.terms.items():
            for perm in itertools.permutations(range(self.degree)):
                out[tuple(key[p] for p in perm)] = _permutation_sign(perm) * v
        return Tensor(self.algebra, self.degree, out)

    def __getitem__(self, key) -> Scalar:
        idx = tuple(self.algebra.index(k) for k in key)
        if len(set(idx)) < len(idx):
            return self.algebra.field.zero
        return _permutation_sign(idx) * self.terms.get(tuple(sorted(idx)), self.algebra.field.zero)

    def _same(self, other) -> None:
        if type(other) is not type(self) or other.algebra.dim != self.algebra.dim:
            raise StructureError(f"cannot combine {type(self).__name__} with {type(other).__name__}")

    def __add__(self, other):
        self._same(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, self.algebra.field.zero) + v
        return type(self)(self.algebra, out)

    def __neg__(self):
        return type(self)(self.algebra, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        s = self.algebra.scalar(s)
        return type(self)(self.algebra, {k: s * v for k, v in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * (1 / self.algebra.scalar(s))

    def __eq__(self, other) -> bool:
        if isinstance(other, Tensor):
            return self.expand() == other
        if type(other) is not type(self):
            return NotImplemented
        return other.algebra.dim == self.algebra.dim and (self - other).is_zero()

    __hash__ = object.__hash__

    def is_zero(self) -> bool:
        return not self.terms

    def ad(self, X):
        return type(self).from_tensor(self.expand().ad(X))

    def map_coefficients(self, fn):
        return type(self)(self.algebra, {k: fn(v) for k, v in self.terms.items()})

    def restrict(self, indices: Iterable[int]):
        """Keep only terms whose indices all lie in ``indices``."""
        keep = set(indices)
        return type(self)(self.algebra, {k: v for k, v in self.terms.items() if set(k) <= keep})

    def named_terms(self) -> dict[tuple[str, ...], Scalar]:
        return {tuple(self.algebra.basis[i] for i in k): v for k, v in self.terms.items()}

    def __repr__(self) -> str:
        return _format_terms(self.terms, self.algebra.basis, "∧")


class Bivector(_Alternating):
    degree = 2


class Trivector(_Alternating):
    degree = 3


def wedge(X: Vector, Y: Vector) -> Bivector:
    X._check(Y)
    L = X.algebra
    out = {}
    for a in range(L.dim):
        for b in range(a + 1, L.dim):
            out[(a, b)] = X.coeffs[a] * Y.coeffs[b] - X.coeffs[b] * Y.coeffs[a]
    return Bivector(L, out)


def wedge3(X: Vector, Y: Vector, Z: Vector) -> Trivector:
    X._check(Y)
    X._check(Z)
    L = X.algebra
    out = {}
    for key in itertools.combinations(range(L.dim), 3):
        total = L.field.zero
        for perm in itertools.permutations(range(3)):
            vs = (X, Y, Z)
            term = _permutation_sign(perm) * L.field.one
            for pos, src in enumerate(perm):
                term *= vs[src].coeffs[key[pos]]
            total += term
        out[key] = total
    return Trivector(L, out)


def outer(X: Vector, Y: Vector) -> Tensor:
    """X (x) Y as a rank-2 tensor."""
    X._check(Y)
    out = {}
    for a, xa in enumerate(X.coeffs):
        for b, yb in enumerate(Y.coeffs):
            if xa and yb:
                out[(a, b)] = xa * yb
    return Tensor(X.algebra, 2, out)


def symmetric_product(X: Vector, Y: Vector) -> Tensor:
    """X (.) Y = X (x) Y + Y (x) X, the quadratic element XY + YX."""
    return outer(X, Y) + outer(Y, X)


@dataclass(frozen=True)
class JacobiDefect:
    """Nonzero entries ``{(i, j, k, m): J^m_ijk}`` over i<j<k."""

    entries: dict
    basis: tuple

    @property
    def is_zero(self) -> bool:
        return not self.entries

    @property
    def witness(self) -> tuple[int, int, int] | None:
        if not self.entries:
            return None
        return min(self.entries)[:3]

    def describe(self) -> list[str]:
        return [
            f"J[{self.basis[i]},{self.basis[j]},{self.basis[k]}]^{self.basis[m]} = {format_scalar(v)}"
            for (i, j, k, m), v in sorted(self.entries.items())
        ]


def structure_jacobi(d: int, c, zero: Scalar) -> dict:
    """Jacobiator of a table ``c[i][j] = {k: value}``; shared with the dual check."""
    entries = {}
    for i, j, k in itertools.combinations(range(d), 3):
        acc: dict[int, Scalar] = {}
        for a, b, e in ((i, j, k), (j, k, i), (k, i, j)):
            for l, v in c[a][b].items():
                for m, w in c[l][e].items():
                    acc[m] = acc.get(m, zero) + v * w
        for m, v in acc.items():
            if v:
                entries[(i, j, k, m)] = v
    return entries


def jacobi_defect(L: LieAlgebra) -> JacobiDefect:
    return JacobiDefect(structure_jacobi(L.dim, L._c, L.field.zero), L.basis)


def ad_invariant(L: LieAlgebra, T) -> bool:
    """True iff ad_X annihilates ``T`` (Leibniz extension) for every basis X."""
    if isinstance(T, _Alternating):
        T = T.expand()
    if T.algebra.dim != L.dim:
        raise StructureError("tensor is not over this algebra")
    T = Tensor(L, T.rank, T.terms)
    return all(T.ad(i).is_zero() for i in range(L.dim))


@dataclass(frozen=True)
class Subspace:
    """Span of a set of basis vectors."""

    algebra: LieAlgebra
    indices: tuple
    subalgebra: bool = False

    def __post_init__(self):
        if len(set(self.indices)) != len(self.indices):
            raise StructureError("subspace indices must be distinct")
        for i in self.indices:
            self.algebra.index(i)
        if self.subalgebra and not self.is_closed():
            raise StructureError(
                f"span{{{', '.join(self.names)}}} is not closed under the bracket"
            )

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.algebra.basis[i] for i in self.indices)

    def is_closed(self) -> bool:
        inside = set(self.indices)
        return all(
            set(self.algebra._c[i][j]) <= inside for i in self.indices for j in self.indices
        )

    def complement(self) -> "Subspace":
        return Subspace(self.algebra, tuple(i for i in range(self.algebra.dim) if i not in self.indices))
