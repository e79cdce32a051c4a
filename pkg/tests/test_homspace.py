import math

import numpy as np
import pytest
import scipy.linalg
import sympy as sp

from liedd import catalog as cat
from liedd.algebra import Bivector, StructureError
from liedd.homspace import (
    DEFAULT_SEED,
    BracketNotPolynomial,
    ChartSingularityError,
    MatrixRep,
    SamplePlan,
    euclid_chart,
    euclid_reference_fields,
    euclid_rep,
    fit_bracket,
    group_element,
    invariant_fields,
    jacobiator,
    poincare_chart,
    poincare_rep,
    sample_poisson,
    sklyanin_bracket,
    verify_phs,
)

TOL = 1e-9


def _points(chart, n=20, seed=DEFAULT_SEED):
    return SamplePlan(points=n, seed=seed).generate(chart)


def expm_oracle(chart, q):
    g = np.eye(chart.rep.size)
    for (gen, _), qm in zip(chart.factors, q):
        g = g @ scipy.linalg.expm(qm * chart.rep.numeric(gen))
    return g


@pytest.mark.parametrize("rep", [euclid_rep, poincare_rep])
def test_representation_fidelity(rep):
    assert not rep().fidelity_defect()


def test_unfaithful_matrices_rejected():
    good = euclid_rep()
    mats = dict(good.matrices)
    mats["J1"] = mats["J2"]
    with pytest.raises(StructureError):
        MatrixRep(cat.euclid3(), mats)


def test_group_element_examples():
    ch = euclid_chart()
    assert np.allclose(group_element(ch, np.zeros(6)), np.eye(4), atol=0)
    g = group_element(ch, {"x1": 1.0})
    expected = np.eye(4)
    expected[1, 0] = 1.0
    assert np.array_equal(g, expected)
    g = group_element(ch, {"th3": math.pi / 4})
    assert np.abs(g - expm_oracle(ch, ch.point({"th3": math.pi / 4}))).max() < 1e-12
    c = math.cos(math.pi / 4)
    assert abs(g[1, 1] - c) < 1e-12 and abs(g[2, 2] - c) < 1e-12


@pytest.mark.parametrize("chart", [euclid_chart(), poincare_chart(), poincare_chart("reversed")],
                         ids=["euclid", "poincare", "poincare-reversed"])
def test_group_element_matches_expm(chart):
    for q in _points(chart):
        assert np.abs(group_element(chart, q) - expm_oracle(chart, q)).max() < 1e-12


def test_named_field_examples():
    ch = euclid_chart()
    for q in _points(ch, 5):
        fs = invariant_fields(ch, q)
        assert np.allclose(fs.right[3], [1, 0, 0, 0, 0, 0], atol=TOL)
    fs = invariant_fields(ch, [0.3, -0.2, 0.5, 0, 0, 0])
    assert fs.component("L", "J3", "th3") == pytest.approx(1.0, abs=TOL)
    assert np.allclose(fs.left[2], [0, 0, 0, 0, 0, 1], atol=TOL)


def test_closed_form_fields_at_100_points():
    ch = euclid_chart()
    for q in _points(ch, 100):
        fs = invariant_fields(ch, q)
        L, R = euclid_reference_fields(q)
        assert np.abs(fs.left - L).max() < TOL
        assert np.abs(fs.right - R).max() < TOL


def _dg(chart, q, h=1e-6):
    out = []
    for mu in range(len(q)):
        e = np.zeros(len(q))
        e[mu] = h
        out.append((group_element(chart, q + e) - group_element(chart, q - e)) / (2 * h))
    return out


@pytest.mark.parametrize("chart", [euclid_chart(), poincare_chart()], ids=["euclid", "poincare"])
def test_fields_against_finite_differences(chart):
    """X^L_a g = g X_a and X^R_a g = X_a g, with derivatives by central differences."""
    for q in _points(chart, 10):
        fs = invariant_fields(chart, q)
        g, dg = group_element(chart, q), _dg(chart, q)
        for a, gen in enumerate(chart.algebra.basis):
            X = chart.rep.numeric(gen)
            left = sum(fs.left[a, mu] * dg[mu] for mu in range(len(q)))
            right = sum(fs.right[a, mu] * dg[mu] for mu in range(len(q)))
            assert np.abs(left - g @ X).max() < 1e-7
            assert np.abs(right - X @ g).max() < 1e-7


def _field_jacobian(chart, side, q, h=1e-5):
    """d/dq^nu of the field components, by central differences."""
    out = []
    for nu in range(len(q)):
        e = np.zeros(len(q))
        e[nu] = h
        plus = getattr(invariant_fields(chart, q + e), side)
        minus = getattr(invariant_fields(chart, q - e), side)
        out.append((plus - minus) / (2 * h))
    return np.stack(out)  # [nu, a, mu]


def _lie_bracket(V, dV, W, dW):
    return np.einsum("n,nm->m", V, dW) - np.einsum("n,nm->m", W, dV)


@pytest.mark.parametrize("chart", [euclid_chart(), poincare_chart()], ids=["euclid", "poincare"])
def test_frame_commutators(chart):
    L = chart.algebra
    for q in _points(chart, 4):
        fs = invariant_fields(chart, q)
        dL, dR = _field_jacobian(chart, "left", q), _field_jacobian(chart, "right", q)
        assert np.allclose(np.linalg.inv(fs.maurer_cartan_left).T, fs.left)
        assert np.allclose(np.linalg.inv(fs.maurer_cartan_right).T, fs.right)
        for a in range(L.dim):
            for b in range(L.dim):
                mixed = _lie_bracket(fs.left[a], dL[:, a], fs.right[b], dR[:, b])
                assert np.abs(mixed).max() < 1e-8
                ll = _lie_bracket(fs.left[a], dL[:, a], fs.left[b], dL[:, b])
                rr = _lie_bracket(fs.right[a], dR[:, a], fs.right[b], dR[:, b])
                c = L.structure(a, b)
                want_l = sum((float(v.as_expr()) * fs.left[k] for k, v in c.items()), np.zeros(L.dim))
                want_r = sum((float(v.as_expr()) * fs.right[k] for k, v in c.items()), np.zeros(L.dim))
                assert np.abs(ll - want_l).max() < 1e-7
                assert np.abs(rr + want_r).max() < 1e-7


def test_chart_singularity():
    with pytest.raises(ChartSingularityError):
        invariant_fields(euclid_chart(), [0, 0, 0, 0, math.pi / 2, 0])


def test_sampler_stays_inside_angle_domain():
    pts = SamplePlan(points=500, seed=1, low=-3, high=3).generate(euclid_chart())
    assert np.abs(pts[:, 3:]).max() <= math.pi / 2 - 1e-3
    assert np.abs(pts[:, :3]).max() > 2


def test_sklyanin_examples():
    ch = euclid_chart()
    r = cat.euclid_class(2)
    for q in _points(ch, 10):
        assert sklyanin_bracket(ch, r, "x1", "x2", q) == pytest.approx(2 * q[2], abs=TOL)
        assert sklyanin_bracket(ch, r, "x1", "th2", q) == pytest.approx(0, abs=TOL)
        assert sklyanin_bracket(ch, r, "th1", "th3", q) == pytest.approx(0, abs=TOL)
        assert sklyanin_bracket(ch, Bivector(cat.euclid3()), "x1", "x3", q) == 0


def test_verify_phs_examples():
    ch = euclid_chart()
    params = {"alpha": 1, "rho": 1, "a12": 0, "a13": 0, "a23": 0}
    rep = verify_phs(ch, cat.euclid_class(1), cat.EUCLID_PHS[1], SamplePlan(), params)
    assert rep.passed and rep.max_deviation < TOL
    zero = cat.PoissonTarget(("x1", "x2", "x3"), {("x1", "x2"): "0", ("x1", "x3"): "0", ("x2", "x3"): "0"})
    assert verify_phs(ch, Bivector(cat.euclid3()), zero).max_deviation == 0
    wrong = verify_phs(ch, cat.euclid_class(2), cat.EUCLID_PHS[1], SamplePlan(), params)
    assert not wrong.passed


@pytest.mark.parametrize("order", ["mirrored", "reversed"])
def test_poincare_case0_both_orders(order):
    rep = verify_phs(poincare_chart(order), cat.poincare_case(0), cat.POINCARE_TABLE2[0])
    assert rep.passed


COISOTROPIC = [("euclid", cat.euclid_class(2), {})] + [
    ("poincare", cat.poincare_case(n), {}) for n in (0, 1, 2, 6, 7)
]


@pytest.mark.parametrize("kind, r, params", COISOTROPIC)
def test_coisotropic_brackets_project(kind, r, params):
    chart = euclid_chart() if kind == "euclid" else poincare_chart()
    x = chart.translations
    rng = np.random.default_rng(3)
    for _ in range(3):
        fixed = {c: float(v) for c, v in zip(x, rng.uniform(-1, 1, 3))}
        _, mats = sample_poisson(chart, r, SamplePlan(points=30, seed=5, fixed=fixed), params)
        block = mats[:, :3, :3]
        assert block.var(axis=0).max() < 1e-9


def test_non_coisotropic_case_does_not_project():
    fixed = {"x0": 0.3, "x1": -0.2, "x2": 0.5}
    _, mats = sample_poisson(poincare_chart(), cat.poincare_case(4), SamplePlan(points=30, fixed=fixed), {"lam": 1})
    assert mats[:, :3, :3].var(axis=0).max() > 1e-6


def test_fit_examples():
    ch = euclid_chart()
    fit = fit_bracket(ch, cat.euclid_class(2))
    assert fit.residual < TOL
    x1, x2, x3 = sp.symbols("x1 x2 x3")
    assert fit.target.table() == {("x1", "x2"): 2 * x3, ("x1", "x3"): -2 * x2, ("x2", "x3"): 2 * x1}
    zero = fit_bracket(ch, Bivector(cat.euclid3()))
    assert all(v == 0 for v in zero.target.table().values())
    with pytest.raises(BracketNotPolynomial):
        fit_bracket(poincare_chart(), cat.poincare_case(4), params={"lam": 1})
    with pytest.raises(ValueError):
        fit_bracket(ch, cat.euclid_class(2), plan=SamplePlan(points=5))


@pytest.mark.parametrize("n", [0, 1, 2, 6, 7])
def test_fitted_tables_antisymmetric_with_zero_jacobiator(n):
    chart = poincare_chart()
    fit = fit_bracket(chart, cat.poincare_case(n))
    _, mats = sample_poisson(chart, cat.poincare_case(n), SamplePlan(points=10))
    assert np.abs(mats + mats.transpose(0, 2, 1)).max() < 1e-12
    for i, j in fit.target.table():
        assert fit.target.expr(j, i) == -fit.target.expr(i, j)
    assert all(v == 0 for v in jacobiator(fit.target).values())


def test_class1_table_jacobiator_vanishes_symbolically():
    assert all(sp.simplify(v) == 0 for v in jacobiator(cat.EUCLID_PHS[1]).values())


def test_parallel_sampling_matches_serial():
    ch = euclid_chart()
    plan = SamplePlan(points=16)
    _, a = sample_poisson(ch, cat.euclid_class(2), plan)
    _, b = sample_poisson(ch, cat.euclid_class(2), plan, workers=4)
    assert np.array_equal(a, b)
