"""Exact kappa -> 0 limits by Laurent-coefficient extraction.

Every coefficient is a rational function N/D.  Writing N = kappa^a N0 and
D = kappa^b D0 with N0(0), D0(0) != 0, the scaled object kappa^n x has
kappa-order a - b + n in each coefficient; the limit keeps the order-zero
coefficients (N0/D0 at kappa = 0), drops positive orders and refuses
negative ones.
"""
from __future__ import annotations

from functools import lru_cache

from .algebra import LieAlgebra, Tensor, Vector, _Alternating
from .bialgebra import Cocommutator
from .scalars import Scalar


class DivergentLimit(ArithmeticError):
    def __init__(self, message: str, pole_order: int):
        super().__init__(message)
        self.pole_order = pole_order


class DegenerateInput(ValueError):
    pass


def _kappa_position(field, parameter: str) -> int:
    names = [str(s) for s in field.symbols]
    return names.index(parameter)


def _poly_order(poly, pos: int) -> int:
    return min(m[pos] for m in poly.monoms())


def _leading(poly, pos: int, order: int):
    """Coefficient of kappa^order with kappa removed."""
    ring = poly.ring
    out = ring.zero
    for monom, coeff in poly.terms():
        if monom[pos] == order:
            m = list(monom)
            m[pos] = 0
            out += ring({tuple(m): coeff})
    return out


def kappa_order(x: Scalar, parameter: str = "kappa") -> int | None:
    """Order of ``x`` at kappa = 0 (None for zero)."""
    if not x:
        return None
    pos = _kappa_position(x.field, parameter)
    return _poly_order(x.numer, pos) - _poly_order(x.denom, pos)


def scalar_limit(x: Scalar, n: int = 0, parameter: str = "kappa") -> Scalar:
    """kappa^0 coefficient of kappa^n x."""
    if not x:
        return x
    pos = _kappa_position(x.field, parameter)
    a, b = _poly_order(x.numer, pos), _poly_order(x.denom, pos)
    order = a - b + n
    if order < 0:
        raise DivergentLimit(f"limit divergent: pole of order {-order} in {parameter}", -order)
    if order > 0:
        return x.field.zero
    num = _leading(x.numer, pos, a)
    den = _leading(x.denom, pos, b)
    return x.field(num) / x.field(den)


def _coefficients(x):
    if isinstance(x, (_Alternating, Tensor)):
        return list(x.terms.values())
    if isinstance(x, Vector):
        return [c for c in x.coeffs if c]
    if isinstance(x, LieAlgebra):
        return [v for *_, v in x.structure_items()]
    if isinstance(x, Cocommutator):
        return [v for img in x.images for v in img.terms.values()]
    return [x] if x else []


def scaled_limit(x, n: int = 0, parameter: str = "kappa", target: LieAlgebra | None = None):
    """Limit kappa -> 0 of kappa^n x, exactly.

    Objects over an algebra are rebound to ``target`` (default: the
    contraction of their own algebra).
    """
    lim = lambda v: scalar_limit(v, n, parameter)  # noqa: E731
    if isinstance(x, LieAlgebra):
        if n != 0:
            raise ValueError("structure constants are contracted without rescaling")
        return contract_algebra(x, parameter)
    if isinstance(x, (_Alternating, Tensor, Vector, Cocommutator)):
        host = target or contract_algebra(x.algebra, parameter)
        if isinstance(x, _Alternating):
            return type(x)(host, {k: lim(v) for k, v in x.terms.items()})
        if isinstance(x, Tensor):
            return Tensor(host, x.rank, {k: v for k, v in ((k, lim(v)) for k, v in x.terms.items()) if v})
        if isinstance(x, Vector):
            return Vector(host, tuple(lim(v) for v in x.coeffs))
        return Cocommutator(host, tuple(scaled_limit(b, n, parameter, host) for b in x.images))
    return lim(x)


def auto_scale(x, parameter: str = "kappa"):
    """Minimal n such that kappa^n x has a finite nonzero limit, with the limit."""
    coeffs = _coefficients(x)
    if not coeffs:
        raise DegenerateInput("cannot scale the zero object")
    n = -min(kappa_order(c, parameter) for c in coeffs)
    return n, scaled_limit(x, n, parameter)


@lru_cache(maxsize=None)
def _contract(L: LieAlgebra, parameter: str) -> LieAlgebra:
    brackets = {}
    for i, j, k, v in L.structure_items():
        if i < j:
            brackets.setdefault((i, j), {})[k] = scalar_limit(v, 0, parameter)
    meta = {k: v for k, v in L.metadata.items() if k not in ("contraction_parameter", "curvature", "casimirs")}
    if "casimirs" in L.metadata:
        meta["casimirs"] = {
            name: [(scalar_limit(L.scalar(c), 0, parameter), x, y) for c, x, y in terms]
            for name, terms in L.metadata["casimirs"].items()
        }
    return LieAlgebra(L.basis, brackets, name=f"{L.name} ({parameter}->0)", field=L.field, metadata=meta)


def contract_algebra(L: LieAlgebra, parameter: str = "kappa") -> LieAlgebra:
    """Structure constants at kappa = 0, re-checked for Jacobi."""
    if parameter not in [str(s) for s in L.field.symbols]:
        return L
    contracted = _contract(L, parameter)
    return L if contracted == L else contracted
