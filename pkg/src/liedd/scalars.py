"""Exact scalar arithmetic.

Every coefficient in the algebraic layer is an element of the rational
function field QQ(lam, kappa, ...) built by sympy.  Elements are normalised
on construction, so ``x == 0`` is a decidable exact test.
"""
from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Mapping

import sympy as sp
from sympy import QQ
from sympy.parsing.sympy_parser import (
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)
from sympy.polys.fields import FracElement, FracField

# Names are ASCII so that scalar strings stay valid Python expressions.
DEFAULT_PARAMETERS: tuple[str, ...] = (
    "lam",
    "kappa",
    "alpha",
    "rho",
    "a12",
    "a13",
    "a23",
    "mu",
    "alpha1",
    "beta1",
    "alpha2",
    "beta2",
)

# Restrictions quoted alongside results; never enforced algebraically.
PARAMETER_FLAGS: dict[str, str] = {
    "kappa": "nonzero",
    "lam": "nonzero",
    "mu": "positive",
    "rho": "nonnegative",
    "alpha": "in {0, 1}",
}

_ALIASES = {"λ": "lam", "lambda": "lam", "κ": "kappa", "α": "alpha", "ρ": "rho", "μ": "mu"}

Scalar = FracElement


@lru_cache(maxsize=None)
def _field(names: tuple[str, ...]) -> FracField:
    return sp.polys.fields.field(",".join(names), QQ)[0]


def scalar_field(extra: Iterable[str] = ()) -> FracField:
    """Field over the default parameters plus any ``extra`` names."""
    names = list(DEFAULT_PARAMETERS)
    for name in extra:
        name = _ALIASES.get(name, name)
        if name not in names:
            names.append(name)
    return _field(tuple(names))


FIELD = scalar_field()


def param(name: str, field: FracField = FIELD) -> Scalar:
    """The generator of ``field`` called ``name``."""
    name = _ALIASES.get(name, name)
    names = [str(s) for s in field.symbols]
    try:
        return field.gens[names.index(name)]
    except ValueError:
        raise KeyError(f"unknown parameter {name!r}") from None


def to_scalar(value, field: FracField = FIELD) -> Scalar:
    """Coerce ints, Fractions, sympy numbers/expressions, strings or field
    elements (possibly from another field) into ``field``."""
    if isinstance(value, FracElement):
        if value.field == field:
            return value
        return field.from_expr(value.as_expr())
    if isinstance(value, str):
        return parse_scalar(value, field)
    if isinstance(value, float):
        raise TypeError("floats are not exact scalars; pass a Fraction or string")
    if isinstance(value, sp.Basic):
        return field.from_expr(value)
    return field(sp.Rational(value))


_TRANSFORMS = standard_transformations + (implicit_multiplication_application,)


def parse_scalar(text: str, field: FracField = FIELD) -> Scalar:
    """Parse a rational expression such as ``"(mu**2-1)/(2*kappa*mu)"``."""
    local = {str(s): s for s in field.symbols}
    for alias, name in _ALIASES.items():
        if name in local:
            local[alias] = local[name]
    text = text.replace("^", "**")
    try:
        expr = parse_expr(text, local_dict=local, transformations=_TRANSFORMS)
    except (SyntaxError, TypeError, sp.SympifyError) as exc:
        raise ValueError(f"cannot parse scalar {text!r}: {exc}") from exc
    if not isinstance(expr, sp.Expr):
        raise ValueError(f"scalar {text!r} is not an expression in the declared parameters")
    unknown = {str(s) for s in expr.free_symbols} - set(local)
    if unknown:
        raise ValueError(f"scalar {text!r} uses undeclared parameters {sorted(unknown)}")
    if not expr.is_rational_function(*field.symbols):
        raise ValueError(f"scalar {text!r} is not a rational function of the parameters")
    return field.from_expr(expr)


def format_scalar(x: Scalar) -> str:
    return str(x.as_expr())


def substitute(x: Scalar, values: Mapping[str, object]) -> Scalar:
    """Partial substitution of parameters by exact values."""
    subs = {sp.Symbol(_ALIASES.get(k, k)): sp.sympify(v) for k, v in values.items()}
    return to_scalar(x.as_expr().subs(subs), x.field)


def to_float(x: Scalar, values: Mapping[str, float] | None = None) -> float:
    values = values or {}
    expr = x.as_expr()
    subs = {s: values[str(s)] for s in expr.free_symbols if str(s) in values}
    result = expr.subs(subs)
    if result.free_symbols:
        raise ValueError(f"free parameters {sorted(map(str, result.free_symbols))} in {expr}")
    return float(result)


def free_parameters(x: Scalar) -> set[str]:
    return {str(s) for s in x.as_expr().free_symbols}
