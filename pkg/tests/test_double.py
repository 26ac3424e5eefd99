import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from whk.double import (
    YDModule,
    build_double,
    build_twisted_double,
    check_associativity,
    check_double,
    check_triangle,
    check_unitors,
    check_yd,
    check_yd_morphism,
    check_yd_double_roundtrip,
    double_counit_forms,
    double_to_yd,
    yd_hom_basis,
    yd_tensor,
    yd_unit,
    yd_unitors,
    yd_vs_double,
    yd_zero,
)
from whk.errors import AntipodeNotInvertible, HMismatch
from whk.gallery import by_name, g2, g3, g4
from whk.hopfcore import WeakHopfAlgebra, check_wha, regular_module
from whk.kernel import QQ, Field, LinMap, Subspace, Tensor, concat, ein

F7 = Field.prime(7)
BASES = ["g2", "g3", "g4"]


def bump(t: Tensor, idx) -> Tensor:
    v = t.values()
    v[idx] = t.field.add(v[idx], t.field.one)
    return Tensor.from_values(t.field, v.tolist(), shape=t.shape)


@pytest.mark.parametrize("fld", [QQ, F7], ids=str)
@pytest.mark.parametrize("base", BASES + ["zn(3)"])
def test_double_is_a_wha(base, fld):
    H = by_name(base, fld)
    D = build_double(H)
    assert check_double(D).passed
    assert check_wha(D.wha).passed


def test_double_dimensions():
    assert build_double(g2()).dim == 4
    assert build_double(g3()).dim == 2
    assert build_double(g4()).dim == 4
    assert build_double(g2()).relations.dim == 0


def test_double_of_pair_groupoid_is_a_matrix_algebra():
    # Rep(G4) is monoidally Vec, so its center has one simple object: the unit H^L.
    # Hence D(G4) acts faithfully and irreducibly on H^L and must be End(k^2).
    D = build_double(g4())
    N, r = yd_vs_double(yd_unit(g4()), D)
    assert r.passed and N.dim == 2
    rep = LinMap(N.act.transpose(1, 0, 2).reshape(D.dim, 4).T)  # D -> End(H^L)
    assert rep.is_bijective()


@pytest.mark.parametrize("base", BASES)
def test_double_unit_and_counit_forms(base):
    H = by_name(base)
    D = build_double(H)
    first, second = double_counit_forms(H)
    assert first == second
    assert D.D_a(H.unit) == D.D_phi(H.counit) == D.wha.unit


@settings(max_examples=40)
@given(st.sampled_from(["g3", "g4"]), st.data())
def test_product_is_independent_of_representatives(base, data):
    H = by_name(base)
    D = build_double(H)
    N = H.dim * H.dim
    ints = st.lists(st.integers(-3, 3), min_size=N, max_size=N)
    x = Tensor.from_values(QQ, data.draw(ints))
    y = Tensor.from_values(QQ, data.draw(ints))
    rel = st.lists(st.integers(-3, 3), min_size=D.relations.dim, max_size=D.relations.dim)
    r1 = ein("i,ia->a", Tensor.from_values(QQ, data.draw(rel)), D.relations.basis)
    r2 = ein("i,ia->a", Tensor.from_values(QQ, data.draw(rel)), D.relations.basis)
    prod = lambda u, v: D.proj(ein("a,b,abk->k", u, v, D.mu))  # noqa: E731
    assert prod(x + r1, y + r2) == prod(x, y)


def test_twisted_double():
    X, D = build_twisted_double(g2())
    assert X.same(build_double(g2()).wha.algebra.opposite())
    X4, D4 = build_twisted_double(g4())
    assert X4.dim == 4 and check_wha(D4.wha).passed


def test_singular_antipode():
    H = g2()
    bad = WeakHopfAlgebra.from_wba(H.wba, Tensor.zeros(QQ, (2, 2)))
    with pytest.raises(AntipodeNotInvertible):
        build_double(bad)
    with pytest.raises(AntipodeNotInvertible):
        build_twisted_double(bad)


@pytest.mark.parametrize("fld", [QQ, F7], ids=str)
@pytest.mark.parametrize("base", BASES + ["dual:g4", "zn(3)"])
def test_unit_module(base, fld):
    H = by_name(base, fld)
    U = yd_unit(H)
    r = check_yd(U)
    assert r.passed and r.get("yd.forms_agree").passed


def test_unit_over_g3_by_hand():
    U = yd_unit(g3())
    # H^L = H; e_i . e_j = delta_ij e_i and rho(e_i) = e_i (x) e_i
    want = np.zeros((2, 2, 2), dtype=np.int64)
    for i in range(2):
        want[i, i, i] = 1
    assert U.act == Tensor(QQ, want) and U.rho == Tensor(QQ, want)


def test_zero_module():
    H = g3()
    Z = yd_zero(H)
    assert check_yd(Z).passed
    assert yd_tensor(Z, yd_unit(H)).module.dim == 0
    assert yd_tensor(yd_unit(H), Z).module.dim == 0
    N, r = yd_vs_double(Z)
    assert N.dim == 0 and r.passed


@pytest.mark.parametrize("base", ["g3", "g4"])
def test_mutated_yd_modules_fail(base):
    H = by_name(base)
    U = yd_unit(H)
    for which in ("act", "rho"):
        t = getattr(U, which)
        for idx in itertools.product(*map(range, t.shape)):
            parts = {"act": U.act, "rho": U.rho}
            parts[which] = bump(t, idx)
            r = check_yd(YDModule(H, parts["act"], parts["rho"]))
            assert not r.passed, (which, idx)
            assert r.failures()[0].witness is not None
            assert r.get("yd.forms_agree").passed  # reported as not applicable


def _unimodular(data, n):
    perm = data.draw(st.permutations(range(n)))
    upper = np.eye(n, dtype=np.int64)
    for i in range(n):
        for j in range(i + 1, n):
            upper[i, j] = data.draw(st.integers(-2, 2))
    P = np.eye(n, dtype=np.int64)[list(perm)] @ upper
    return Tensor(QQ, P), Tensor(QQ, np.round(np.linalg.inv(P)).astype(np.int64))


@settings(max_examples=60)
@given(st.sampled_from(["g2", "g3", "g4", "zn(3)"]), st.booleans(), st.data())
def test_two_condition_form_iff_single_relation(base, regular, data):
    """Twisting the coaction by sigma keeps the comodule axioms but can break the YD conditions."""
    H = by_name(base)
    D, mods = _harvest(H)
    M = mods[1] if regular else mods[0]
    sigma, sigma_inv = _unimodular(data, M.dim)
    assert sigma @ sigma_inv == Tensor.eye(QQ, M.dim)
    rho = ein("mn,nhx,yx->mhy", sigma_inv.T, M.rho, sigma)
    r = check_yd(YDModule(H, M.act, rho))
    for k in ("module.associative", "module.unital", "comodule.coassociative", "comodule.counit"):
        assert r.get(k).passed
    c = r.get("yd.forms_agree")
    assert c.passed and "not applicable" not in c.note
    yd = r.get("yd.first").passed and r.get("yd.second").passed
    assert yd == r.get("yd.single").passed


def test_twisted_coaction_can_break_yd():
    # a transposition twist of the regular D(G4)-harvest stays a comodule but is no longer YD
    H = g4()
    D, mods = _harvest(H)
    M = mods[1]
    found = False
    for i, j in itertools.permutations(range(M.dim), 2):
        swap = np.eye(M.dim, dtype=np.int64)
        swap[[i, j]] = swap[[j, i]]
        S = Tensor(QQ, swap)
        r = check_yd(YDModule(H, M.act, ein("mn,nhx,yx->mhy", S, M.rho, S)))
        if not r.get("yd.single").passed:
            assert not (r.get("yd.first").passed and r.get("yd.second").passed)
            found = True
            break
    assert found


def test_tensor_and_associativity_g3():
    H = g3()
    U = yd_unit(H)
    UU = yd_tensor(U, U)
    assert check_yd(UU.module).passed and UU.module.dim == 2
    assert check_associativity(U, U, U).passed
    three_left = yd_tensor(UU.module, U).module.dim
    three_right = yd_tensor(U, UU.module).module.dim
    assert three_left == three_right == 2


def test_unitors_g3():
    U = yd_unit(g3())
    uL, uR, left, right = yd_unitors(U)
    assert uR.is_bijective() and uL.is_bijective()
    assert (uL @ uL.inverse()).matrix == Tensor.eye(QQ, uL.codomain_dim)
    assert check_unitors(U, U).passed


def test_triangle_g2():
    U = yd_unit(g2())
    assert check_triangle(U, U).passed


def test_tensor_needs_same_H():
    with pytest.raises(HMismatch):
        yd_tensor(yd_unit(g2()), yd_unit(g3()))


def _harvest(H):
    D = build_double(H)
    return D, [yd_unit(H), double_to_yd(regular_module(D.wha.algebra), D)]


@pytest.mark.parametrize("base", ["g2", "g3"])
def test_yd_double_roundtrips(base):
    D, mods = _harvest(by_name(base))
    for M in mods:
        assert check_yd(M).passed
        assert check_yd_double_roundtrip(M, D).passed
    N, _ = yd_vs_double(mods[0], D)
    assert N.dim == D.H.HL.dim


@pytest.mark.parametrize("base", BASES)
def test_tensor_of_harvest_is_yd(base):
    D, mods = _harvest(by_name(base))
    for M, N in itertools.product(mods, repeat=2):
        MN = yd_tensor(M, N)
        assert check_yd(MN.module).passed
        assert check_unitors(M, N).passed


def test_yd_morphisms_g3():
    D, mods = _harvest(g3())
    U, R = mods
    basis = yd_hom_basis(U, U)
    span = Subspace.span(concat([T.matrix.reshape(1, -1) for T in basis]), U.dim * U.dim)
    assert span.contains(Tensor.eye(QQ, U.dim).reshape(-1))
    for T in yd_hom_basis(U, R):
        assert check_yd_morphism(T, U, R).passed
