import pytest
import sympy as sp
from hypothesis import given, strategies as st

from conftest import ad_matrices
from liedd import catalog as cat
from liedd.algebra import Bivector, StructureError, Tensor
from liedd.bialgebra import (
    Cocommutator,
    CoisotropyClass,
    NotInClassificationForm,
    YBClass,
    classify_yb,
    coboundary_delta,
    cocycle_defect,
    coisotropy_classify,
    cybe_tensor,
    dual_jacobi,
    grade_decompose,
    schouten,
    stachura_invariants,
)
from liedd.double import assemble_double, canonical_r, euclidean_spec
from liedd.scalars import param, substitute, to_scalar

RMATRIX_IDS = cat.list_entries("rmatrix")


@pytest.mark.parametrize("entry", RMATRIX_IDS)
def test_coboundary_is_cocycle(entry):
    r = cat.get(entry).payload
    delta = coboundary_delta(r.algebra, r)
    assert cocycle_defect(r.algebra, delta).is_zero


def _matrix_delta(L, r):
    """delta(X_i)^{ab} = ad_i^a_c r^{cb} + ad_i^b_c r^{ac} with plain sympy matrices."""
    R = sp.zeros(L.dim, L.dim)
    for (a, b), v in r.expand().terms.items():
        R[a, b] = v.as_expr()
    return [A * R + R * A.T for A in ad_matrices(L)]


@pytest.mark.parametrize("entry", ["poincare21.case3", "euclid3.class1", "so31.rD"])
def test_coboundary_matches_matrix_oracle(entry):
    r = cat.get(entry).payload
    L = r.algebra
    delta = coboundary_delta(L, r)
    for i, M in enumerate(_matrix_delta(L, r)):
        got = delta.images[i].expand()
        for a in range(L.dim):
            for b in range(L.dim):
                assert sp.cancel(got[(a, b)].as_expr() - M[a, b]) == 0


def test_cybe_tensor_matches_component_formula():
    # [[r,r]]^{abc} = c^a_ij r^{ib} r^{jc} + r^{ai} c^b_ij r^{jc} + r^{ai} r^{bj} c^c_ij
    L = cat.euclid3()
    r = substitute_class1({"alpha": 1, "rho": 2, "a12": 1, "a13": 0, "a23": 3})
    R = r.expand()
    C = cybe_tensor(L, r)
    d = L.dim
    for a in range(d):
        for b in range(d):
            for c in range(d):
                total = 0
                for i in range(d):
                    for j in range(d):
                        cij = L.structure(i, j)
                        total += cij.get(a, 0) * R[(i, b)] * R[(j, c)]
                        total += R[(a, i)] * cij.get(b, 0) * R[(j, c)]
                        total += R[(a, i)] * R[(b, j)] * cij.get(c, 0)
                assert C[(a, b, c)] == total


def substitute_class1(values):
    return cat.euclid_class(1).map_coefficients(lambda v: substitute(v, values))


def test_yang_baxter_classes():
    L = cat.euclid3()
    assert classify_yb(L, cat.euclid_class(3)) is YBClass.CYBE
    assert classify_yb(L, substitute_class1({"alpha": 0})) is YBClass.CYBE
    assert classify_yb(L, substitute_class1({"alpha": 1})) is YBClass.MCYBE
    assert classify_yb(L, cat.euclid_class(2)) is YBClass.MCYBE
    assert classify_yb(L, L.bivector({("P1", "J2"): 1})) is YBClass.NONE
    assert classify_yb(L, Bivector(L)) is YBClass.CYBE


def test_stachura_examples():
    assert tuple(stachura_invariants(cat.euclid_class(2))) == (0, 2)
    assert tuple(stachura_invariants(cat.euclid_class(3))) == (0, 0)
    inv = stachura_invariants(cat.euclid_class(1))
    alpha = param("alpha")
    assert inv.mu == -2 * alpha**2
    assert inv.p == param("a12") * alpha
    assert not inv.violations
    one = stachura_invariants(substitute_class1({"alpha": 1, "rho": 0, "a12": 0, "a13": 0, "a23": 0}))
    assert one.mu == -2


def test_stachura_rejects_non_classification_form():
    L = cat.euclid3()
    with pytest.raises(NotInClassificationForm) as info:
        stachura_invariants(L.bivector({("P1", "J2"): 1}))
    assert not info.value.residual.is_zero()


def test_schouten_polarization_is_symmetric():
    r = cat.euclid_class(2)
    s = cat.euclid_class(3)
    L = r.algebra
    assert schouten(L, r, s) == schouten(L, s, r)
    assert schouten(L, r + s) == schouten(L, r) + schouten(L, s) + schouten(L, r, s) * 2


def test_grade_decompose_reassembles():
    r = cat.euclid_class(1)
    L = r.algebra
    a, b, c = grade_decompose(r, L.subspace(L.metadata["h"]), L.subspace(L.metadata["t"]))
    assert a + b + c == r
    assert c.is_zero()
    assert a == cat.euclid_a_part()


def test_coisotropy_on_euclidean_class2():
    L = cat.euclid3()
    delta = coboundary_delta(L, cat.euclid_class(2))
    h = L.subspace(("J1", "J2", "J3"), subalgebra=True)
    assert coisotropy_classify(delta, h) is CoisotropyClass.ZERO
    with pytest.raises(StructureError):
        coisotropy_classify(delta, L.subspace(("J1", "J2")))


def test_dual_structure_must_be_antisymmetric():
    L = cat.euclid3()
    with pytest.raises(StructureError):
        Cocommutator.from_dual_structure(L, {0: {(3, 4): 1, (4, 3): 1}})


def test_dual_jacobi():
    L = cat.euclid3()
    assert dual_jacobi(coboundary_delta(L, cat.euclid_class(2)))
    # delta(P1) = P1^P2, delta(P2) = P2^P3, delta(P3) = P3^P1 has a non-Lie dual
    bad = Cocommutator.from_images(L, {"P1": {("P1", "P2"): 1}, "P2": {("P2", "P3"): 1}, "P3": {("P3", "P1"): 1}})
    assert not dual_jacobi(bad)


def test_full_and_skew_canonical_r_give_same_delta_up_to_convention():
    D = assemble_double(euclidean_spec(), names=("J1", "J2", "J3", "P1", "P2", "P3"))
    full, skew = canonical_r(D)
    L = D.algebra
    # the antisymmetric projection of r is r'/2 with the unnormalised wedge
    assert coboundary_delta(L, full) == coboundary_delta(L, skew / 2)


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=5)


@given(st.lists(rationals, min_size=15, max_size=15))
def test_random_bivectors_on_poincare_are_coboundary_cocycles(coeffs):
    L = cat.poincare21()
    keys = [(i, j) for i in range(6) for j in range(i + 1, 6)]
    r = Bivector(L, {k: to_scalar(c) for k, c in zip(keys, coeffs) if c})
    assert cocycle_defect(L, coboundary_delta(L, r)).is_zero


def test_coboundary_rejects_non_skew_image():
    L = cat.euclid3()
    t = L.tensor({("P1", "P1"): 1}, rank=2)
    with pytest.raises(StructureError):
        coboundary_delta(L, t)
    assert isinstance(t, Tensor)
