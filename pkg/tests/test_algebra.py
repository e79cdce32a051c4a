import pytest
from hypothesis import given, strategies as st

from conftest import brute_force_jacobi_ok
from liedd import catalog as cat
from liedd.algebra import (
    Bivector,
    JacobiError,
    LieAlgebra,
    StructureError,
    Trivector,
    ad_invariant,
    bracket,
    jacobi_defect,
    outer,
    wedge,
    wedge3,
)
from liedd.scalars import param, to_scalar

ALGEBRAS = [cat.euclid3, cat.so31, cat.poincare21, cat.so31_cs_ac, cat.so31_cs_bd]


@pytest.mark.parametrize("builder", ALGEBRAS, ids=lambda b: b.__name__)
def test_catalog_algebras_agree_with_adjoint_oracle(builder):
    L = builder()
    assert jacobi_defect(L).is_zero
    assert brute_force_jacobi_ok(L)


def _perturbed_e3():
    br = dict(cat._euclidean_brackets())
    br[("P1", "P2")] = {"J1": 1}
    return br


def test_perturbed_algebra_reports_a_true_witness():
    br = _perturbed_e3()
    L = LieAlgebra(cat.euclid3().basis, br, check=False)
    assert not brute_force_jacobi_ok(L)
    d = jacobi_defect(L)
    i, j, k = d.witness
    X, Y, Z = (L.basis_vector(n) for n in (i, j, k))
    jac = bracket(L, bracket(L, X, Y), Z) + bracket(L, bracket(L, Y, Z), X) + bracket(L, bracket(L, Z, X), Y)
    assert not jac.is_zero()
    with pytest.raises(JacobiError) as info:
        LieAlgebra(cat.euclid3().basis, br)
    assert info.value.witness == (i, j, k)


def test_parametric_jacobi_failure_is_detected_symbolically():
    # Jacobi holds only when kappa = 0
    br = {("X", "Y"): {"Z": 1}, ("X", "Z"): {"X": param("kappa")}, ("Y", "Z"): {"Y": param("kappa")}}
    L = LieAlgebra(("X", "Y", "Z"), br, check=False)
    assert not jacobi_defect(L).is_zero


@pytest.mark.parametrize(
    "basis, brackets",
    [
        (("X", "X"), {}),
        (("X", "Y"), {("X", "X"): {"Y": 1}}),
        (("X", "Y"), {("X", "Y"): {"X": 1}, ("Y", "X"): {"X": 1}}),
        (("X", "Y"), {("X", "W"): {"X": 1}}),
    ],
)
def test_structural_errors(basis, brackets):
    with pytest.raises(StructureError):
        LieAlgebra(basis, brackets)


rationals = st.fractions(min_value=-5, max_value=5, max_denominator=7)
vectors = st.lists(rationals, min_size=6, max_size=6)


@given(vectors, vectors, vectors, rationals)
def test_bracket_bilinear_and_antisymmetric(x, y, z, s):
    L = cat.so31()
    X, Y, Z = (L.vector([to_scalar(v) for v in w]) for w in (x, y, z))
    s = to_scalar(s)
    assert bracket(L, X, Y) == -bracket(L, Y, X)
    assert bracket(L, X * s + Z, Y) == bracket(L, X, Y) * s + bracket(L, Z, Y)


@given(vectors, vectors, vectors)
def test_wedge_is_alternating_and_ad_obeys_leibniz(x, y, z):
    L = cat.euclid3()
    X, Y, Z = (L.vector([to_scalar(v) for v in w]) for w in (x, y, z))
    assert wedge(X, Y) == -wedge(Y, X)
    assert wedge(X, X).is_zero()
    assert Bivector.from_tensor(outer(X, Y) - outer(Y, X)) == wedge(X, Y)
    assert wedge3(X, Y, Z) == -wedge3(Y, X, Z)
    assert wedge(X, Y).ad(Z) == wedge(bracket(L, Z, X), Y) + wedge(X, bracket(L, Z, Y))


def test_wedge_convention_has_no_half():
    L = cat.euclid3()
    b = L["P1"] ^ L["J1"]
    T = b.expand()
    assert T[("P1", "J1")] == 1 and T[("J1", "P1")] == -1


def test_trivector_sign_sorting():
    L = cat.euclid3()
    t = Trivector.from_terms(L, {("P3", "P1", "P2"): 1})
    assert t[("P1", "P2", "P3")] == 1
    assert t[("P2", "P1", "P3")] == -1


@pytest.mark.parametrize("builder", [cat.euclid3, cat.so31, cat.poincare21], ids=lambda b: b.__name__)
def test_casimirs_invariant_but_generic_tensor_not(builder):
    L = builder()
    for c in ("C1", "C2"):
        assert ad_invariant(L, cat.casimir(L, c))
    assert not ad_invariant(L, outer(L.basis_vector(0), L.basis_vector(0)))


def test_subspaces():
    L = cat.euclid3()
    assert L.subspace(("J1", "J2", "J3")).is_closed()
    assert L.subspace(("P1", "P2", "P3")).is_closed()
    assert L.subspace(("J1", "P1")).is_closed()
    assert not L.subspace(("J1", "J2")).is_closed()
    assert not cat.so31().subspace(("P1", "P2", "P3")).is_closed()
