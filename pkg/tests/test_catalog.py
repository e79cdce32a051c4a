import pytest
from hypothesis import given, strategies as st

from liedd import catalog as cat
from liedd import schema
from liedd.algebra import Bivector, LieAlgebra, StructureError, bracket, jacobi_defect, wedge
from liedd.bialgebra import coboundary_delta, coisotropy_classify
from liedd.scalars import param, to_scalar


def test_get_examples():
    E = cat.get("euclid3").payload
    assert E.structure(E.index("J1"), E.index("J2")) == {E.index("J3"): 1}
    r4 = cat.get("poincare21.case4").payload
    assert r4[("P0", "P2")] == param("lam")
    with pytest.raises(cat.CatalogLookupError):
        cat.get("nonexistent")


def test_ids_unique_and_kinds():
    ids = cat.list_entries()
    assert len(ids) == len(set(ids))
    assert set(cat.list_entries("algebra")) == {"euclid3", "poincare21", "so31", "so31.cs_ac", "so31.cs_bd"}
    assert len(cat.list_entries("rmatrix", "poincare21.case")) == 8


@pytest.mark.parametrize("entry", cat.list_entries())
def test_every_entry_validates(entry):
    e = cat.get(entry)
    x = e.payload
    if isinstance(x, LieAlgebra):
        assert jacobi_defect(x).is_zero
    elif isinstance(x, cat.BasisIso):
        assert not x.bracket_defect()
    elif isinstance(x, cat.PoissonTarget):
        assert set(x.parameters) <= set(e.parameters)
    assert e.citation


@pytest.mark.parametrize("entry", cat.list_entries())
def test_export_round_trip(entry):
    x = cat.get(entry).payload
    doc = schema.to_dict(x)
    assert doc["schema"] == 1
    back = schema.from_dict(doc)
    if isinstance(x, cat.PoissonTarget):
        assert back.table() == x.table()
    elif isinstance(x, cat.BasisIso):
        assert back.images == x.images
    elif isinstance(x, LieAlgebra):
        assert back == x
    else:
        assert back == x


def test_table1_column():
    L = cat.poincare21()
    h = L.subspace(("J", "K1", "K2"), subalgebra=True)
    got = [coisotropy_classify(coboundary_delta(L, cat.poincare_case(n)), h).value for n in range(8)]
    assert got == [cat.POINCARE_TABLE1[n][0] for n in range(8)]
    assert got == ["Zero", "PoissonSubgroup", "Coisotropic", "NonCoisotropic", "NonCoisotropic",
                   "NonCoisotropic", "Coisotropic", "Coisotropic"]


def test_table2_dd_presets_are_diagonal():
    for n in (1, 2):
        preset = cat.POINCARE_TABLE2[n].presets["dd"]
        a, b = (preset[k] for k in sorted(preset))
        assert a == b


def test_csiso_maps_cs_brackets_to_geometric_brackets():
    iso = cat.csiso()
    assert not iso.bracket_defect()
    S = iso.source
    X, Y = S["P1"], S["P2"]
    assert cat.apply_iso(iso, bracket(S, X, Y)) == bracket(iso.target, iso.vector(X), iso.vector(Y))


def test_identity_iso():
    E = cat.euclid3()
    ident = cat.BasisIso(E, E, {g: {g: 1} for g in E.basis}, name="id")
    r = cat.euclid_class(1)
    assert cat.apply_iso(ident, r) == r
    assert cat.apply_iso(ident, E["J1"]) == E["J1"]


def test_apply_iso_rejects_foreign_algebra():
    with pytest.raises(StructureError):
        cat.apply_iso(cat.csiso(), cat.euclid3()["J1"])


def test_non_isomorphism_rejected():
    E = cat.euclid3()
    with pytest.raises(StructureError):
        cat.BasisIso(E, E, {g: {"J1": 1} for g in E.basis})
    swapped = {g: {g: 1} for g in E.basis}
    swapped["J1"], swapped["P1"] = {"P1": 1}, {"J1": 1}
    with pytest.raises(StructureError):
        cat.BasisIso(E, E, swapped)


def test_case_a_pushforward():
    assert cat.apply_iso(cat.csiso(), cat.so31_cs_rmatrix("A")) == cat.so31_rmatrix("A")


rationals = st.fractions(min_value=-3, max_value=3, max_denominator=4)


@given(st.lists(rationals, min_size=6, max_size=6), st.lists(rationals, min_size=6, max_size=6))
def test_apply_iso_commutes_with_wedge_and_bracket(x, y):
    for iso in (cat.csiso(), cat.csiso2()):
        S = iso.source
        X = S.vector([to_scalar(v) for v in x])
        Y = S.vector([to_scalar(v) for v in y])
        assert cat.apply_iso(iso, wedge(X, Y)) == wedge(iso.vector(X), iso.vector(Y))
        assert iso.vector(bracket(S, X, Y)) == bracket(iso.target, iso.vector(X), iso.vector(Y))
        assert iso.inverse().vector(iso.vector(X)) == X


def test_stored_r_matrices_keep_reference_form():
    r0 = cat.poincare_case(0)
    assert r0[("P0", "J")] == to_scalar(-1) / 2
    assert isinstance(r0, Bivector)
    rd = cat.so31_rmatrix("D")
    mu, k = param("mu"), param("kappa")
    assert rd[("P3", "J3")] == (1 + mu**2) / (2 * mu)
    assert rd[("P1", "P2")] == -(mu**2 - 1) / (2 * k * mu)
