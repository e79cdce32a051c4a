import itertools

import numpy as np
import pytest

from conftest import brute_force_jacobi_ok
from liedd import catalog as cat
from liedd.algebra import LieAlgebra, ad_invariant, jacobi_defect
from liedd.bialgebra import coboundary_delta, cocycle_defect, dual_jacobi
from liedd.double import (
    DoubleSpec,
    MatchedPairError,
    assemble_double,
    associativity_check,
    canonical_casimir,
    canonical_r,
    delta_on_double,
    double_brackets,
    euclidean_spec,
    pairing,
    pairing_from_casimir,
)

NAMES = ("J1", "J2", "J3", "P1", "P2", "P3")
EPS = {(0, 1): {2: 1}, (1, 2): {0: 1}, (2, 0): {1: 1}}


@pytest.fixture(scope="module")
def euclid_double():
    return assemble_double(euclidean_spec(), names=NAMES)


def test_euclidean_double_is_e3(euclid_double):
    assert euclid_double.algebra == cat.euclid3()


def test_pairing_values(euclid_double):
    L = euclid_double.algebra
    assert pairing(euclid_double, L["P1"], L["J1"]) == 1
    assert pairing(euclid_double, L["J1"], L["J2"]) == 0
    assert pairing(euclid_double, L["P1"], L["P2"]) == 0
    assert associativity_check(euclid_double)


def test_canonical_r_and_casimir(euclid_double):
    L = euclid_double.algebra
    full, skew = canonical_r(euclid_double)
    assert full == L.tensor({(f"P{i}", f"J{i}"): 1 for i in (1, 2, 3)}, rank=2)
    assert skew == cat.euclid_class(2)
    C2 = L.tensor({(f"J{i}", f"P{i}"): 1 for i in (1, 2, 3)}, rank=2)
    assert full.symmetric_part() == C2.symmetric_part()
    C = canonical_casimir(euclid_double)
    assert C == (full + C2) / 2
    assert ad_invariant(L, C)


def test_casimir_invariance_by_explicit_ad_action(euclid_double):
    L = euclid_double.algebra
    C = canonical_casimir(euclid_double)
    for g in L.basis:
        X = L[g]
        total = L.tensor({}, rank=2)
        for (a, b), v in C.terms.items():
            # [X, e_a] (x) e_b + e_a (x) [X, e_b]
            from liedd.algebra import bracket, outer

            total = total + (outer(bracket(L, X, L.basis_vector(a)), L.basis_vector(b))
                             + outer(L.basis_vector(a), bracket(L, X, L.basis_vector(b)))) * v
        assert total.is_zero()


def test_pairing_from_casimir_inverts(euclid_double):
    assert pairing_from_casimir(canonical_casimir(euclid_double)) == euclid_double.pairing_matrix


def test_delta_on_euclidean_double(euclid_double):
    delta = delta_on_double(euclid_double)
    L = euclid_double.algebra
    for g in ("J1", "J2", "J3"):
        assert delta[g].is_zero()
    assert delta["P1"] == L.bivector({("P2", "P3"): 1})
    skew_delta = coboundary_delta(L, canonical_r(euclid_double).skew)
    assert skew_delta["P1"] == L.bivector({("P2", "P3"): 2})


def test_abelian_double():
    D = assemble_double(DoubleSpec(2, {}, {}))
    assert all(not D.algebra.structure(i, j) for i in range(4) for j in range(4))
    assert delta_on_double(D).is_zero()
    assert ad_invariant(D.algebra, canonical_casimir(D))


def test_non_matched_pair_reports_a_real_violation():
    spec = DoubleSpec(3, EPS, {(0, 1): {2: 1}})
    with pytest.raises(MatchedPairError) as info:
        assemble_double(spec)
    L = LieAlgebra(spec.names()[0] + spec.names()[1], double_brackets(spec), check=False)
    assert not brute_force_jacobi_ok(L)
    assert info.value.witness == jacobi_defect(L).witness


def bianchi_f(n, a):
    """f^ij_k = eps^ijl n_lk + delta^j_k a^i - delta^i_k a^j."""
    f = {}
    for i, j in itertools.combinations(range(3), 2):
        row = {}
        for k in range(3):
            v = sum(_eps(i, j, l) * n[l][k] for l in range(3))
            v += (a[i] if j == k else 0) - (a[j] if i == k else 0)
            if v:
                row[k] = int(v)
        f[(i, j)] = row
    return f


def _eps(i, j, k):
    return int(np.sign((j - i) * (k - i) * (k - j)))


def _random_specs(count, seed):
    rng = np.random.default_rng(seed)
    specs = []
    for t in range(count):
        a = rng.integers(-2, 3, size=3)
        if t % 2 == 0:
            n = np.zeros((3, 3), dtype=int)
        else:
            # symmetric n with n.a = 0: n = s v v^T for v orthogonal to a, or any n when a = 0
            v = np.cross(a, rng.integers(-2, 3, size=3)) if a.any() else rng.integers(-2, 3, size=3)
            for fallback in ([1, 0, 0], [0, 1, 0]):
                if not v.any():
                    v = np.cross(a, fallback) if a.any() else np.array(fallback)
            n = np.outer(v, v) * int(rng.choice([-1, 1]))
        specs.append(DoubleSpec(3, EPS, bianchi_f(n.tolist(), a.tolist())))
    return specs


def test_matched_pair_equivalence_on_random_specs():
    specs = _random_specs(24, seed=7)
    outcomes = []
    for spec in specs:
        delta = spec.cocommutator()
        assert dual_jacobi(delta), "a Bianchi-type f must itself be a Lie algebra"
        cocycle = cocycle_defect(spec.g_algebra(), delta).is_zero
        try:
            D = assemble_double(spec)
        except MatchedPairError:
            assembled = False
        else:
            assembled = True
            assert associativity_check(D)
            assert ad_invariant(D.algebra, canonical_casimir(D))
            # delta_D on g reproduces f, with the sign of the canonical r
            dD = delta_on_double(D)
            for k in range(3):
                got = {key: v for key, v in dD.images[k].terms.items()}
                want = {key: -v for key, v in delta.images[k].terms.items()}
                assert got == want
        assert assembled == cocycle
        outcomes.append(assembled)
    assert len(specs) >= 20
    assert any(outcomes) and not all(outcomes)


def test_dual_jacobi_failure_implies_double_jacobi_failure():
    rng = np.random.default_rng(11)
    failures = 0
    for _ in range(20):
        f = {(i, j): {k: int(rng.integers(-1, 2)) for k in range(3)}
             for i, j in itertools.combinations(range(3), 2)}
        spec = DoubleSpec(3, EPS, f)
        ok_dual = dual_jacobi(spec.cocommutator())
        names = spec.names()[0] + spec.names()[1]
        ok_double = jacobi_defect(LieAlgebra(names, double_brackets(spec), check=False)).is_zero
        if not ok_dual:
            failures += 1
            assert not ok_double
        if ok_double:
            assert ok_dual
    assert failures > 0
