import pytest
from hypothesis import given, strategies as st

from liedd.scalars import (
    FIELD,
    format_scalar,
    free_parameters,
    param,
    parse_scalar,
    substitute,
    to_float,
    to_scalar,
)


def test_parse_rational_expressions():
    kappa = param("kappa")
    assert parse_scalar("1/kappa") == 1 / kappa
    assert parse_scalar("kappa^2 - 1") == kappa**2 - 1
    assert parse_scalar("2 mu") == 2 * param("mu")


def test_unicode_aliases():
    assert parse_scalar("κ*λ") == param("kappa") * param("lam")


def test_undeclared_parameter_rejected():
    with pytest.raises(ValueError):
        parse_scalar("zeta + 1")
    with pytest.raises(ValueError):
        parse_scalar("zeta")
    with pytest.raises(ValueError):
        parse_scalar("sin(kappa)")


def test_floats_rejected():
    with pytest.raises((TypeError, ValueError)):
        to_scalar(0.5)


def test_substitute_and_float():
    x = param("alpha") ** 2 + param("rho")
    assert substitute(x, {"alpha": 0}) == param("rho")
    assert to_float(x, {"alpha": 2, "rho": 1}) == 5.0
    with pytest.raises(ValueError):
        to_float(x, {"alpha": 1})
    assert free_parameters(x) == {"alpha", "rho"}


@given(st.fractions(max_denominator=50), st.fractions(max_denominator=50))
def test_format_parse_round_trip(a, b):
    x = to_scalar(a) + to_scalar(b) * param("kappa") / (1 + param("mu") ** 2)
    assert parse_scalar(format_scalar(x)) == x
    assert FIELD(0) == x - x
