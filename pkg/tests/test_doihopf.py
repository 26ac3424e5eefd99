import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from whk.comodact import WeakAction, WeakCoaction, check_comodule_algebra, check_module_coalgebra
from whk.doihopf import (
    DoiHopfDatum,
    DoiHopfModule,
    build_datum,
    check_datum,
    check_module,
    check_morphism,
    dual_datum,
    dualize_module,
    dualize_morphism,
    generated_submodule,
    hom_basis,
    hom_space,
    submodule,
    zero_module,
)
from whk.errors import DatumMismatch
from whk.gallery import by_name, example_datum, g2, g3, g4
from whk.kernel import QQ, LinMap, Tensor
from whk.smash import harvest_modules

CASES = [(b, ex) for b in ("g2", "g3", "g4") for ex in ("ex1", "ex2", "ex3", "ex4")]


def hopf_module(d):
    """H as a module over the ex3 datum of H: right multiplication, left comultiplication."""
    return DoiHopfModule(d, d.H.mult, d.H.comult)


def bump(t: Tensor, idx) -> Tensor:
    v = t.values()
    v[idx] = t.field.add(v[idx], t.field.one)
    return Tensor.from_values(t.field, v.tolist(), shape=t.shape)


@pytest.mark.parametrize("base,ex", CASES)
def test_examples_are_nondegenerate_right_data(base, ex):
    d = example_datum(by_name(base), ex)
    assert d.side == "right" and d.nondegenerate
    assert check_datum(d).passed


@pytest.mark.parametrize("base,ex", CASES)
def test_dual_datum(base, ex):
    d = example_datum(by_name(base), ex)
    dd = dual_datum(d)
    assert dd.side == "left"
    assert check_datum(dd).passed
    assert dual_datum(dd).same(d)
    assert dd.A.dim == d.C.dim and dd.C.dim == d.A.dim


def test_dual_of_degenerate_datum_keeps_flag():
    H = g3()
    zero = WeakAction("right", H, H.coalgebra, Tensor.zeros(QQ, (2, 2, 2)))
    d = DoiHopfDatum("right", WeakCoaction("left", H, H.algebra, H.comult), zero)
    assert not d.nondegenerate
    assert not dual_datum(d).nondegenerate
    # the zero action satisfies c1-c3 vacuously; only non-degeneracy sees it
    assert check_module_coalgebra(zero).passed
    assert not build_datum(H, d.coaction, zero, "right").nondegenerate


def test_build_datum_rejects_foreign_H():
    H, K = g2(), g3()
    with pytest.raises(DatumMismatch):
        build_datum(H, WeakCoaction("left", K, K.algebra, K.comult), WeakAction("right", H, H.coalgebra, H.mult), "right")
    with pytest.raises(ValueError):
        build_datum(H, WeakCoaction("left", H, H.algebra, H.comult), WeakAction("right", H, H.coalgebra, H.mult), "up")


def _axioms(rep, prefix):
    return tuple(rep.get(f"{prefix}{i}").passed for i in (1, 2, 3))


@pytest.mark.parametrize("base,ex", [(b, e) for b in ("g2", "g3") for e in ("ex1", "ex2", "ex3")])
def test_duality_swaps_each_axiom_under_mutation(base, ex):
    """Each single-entry perturbation breaks a_i on one side exactly when it breaks c_i on the other."""
    d = example_datum(by_name(base), ex)
    for which in ("rho", "act"):
        t = getattr(d, which)
        for idx in itertools.product(*map(range, t.shape)):
            co, ac = d.coaction, d.action
            if which == "rho":
                co = WeakCoaction(co.side, co.H, co.A, bump(t, idx))
            else:
                ac = WeakAction(ac.side, ac.H, ac.C, bump(t, idx))
            m = DoiHopfDatum(d.side, co, ac)
            dd = dual_datum(m)
            before = (_axioms(check_comodule_algebra(m.coaction), "a"), _axioms(check_module_coalgebra(m.action), "c"))
            after = (_axioms(check_module_coalgebra(dd.action), "c"), _axioms(check_comodule_algebra(dd.coaction), "a"))
            assert before == after, (which, idx)
            assert not all(before[0] + before[1]), (which, idx)


@pytest.mark.parametrize("base,ex", [(b, e) for b in ("g2", "g3", "g4") for e in ("ex1", "ex2", "ex3")])
def test_harvested_modules(base, ex):
    d = example_datum(by_name(base), ex)
    mods = harvest_modules(d)
    assert mods
    for M in mods:
        assert check_module(M).passed
        assert check_module(dualize_module(M)).passed
        assert dualize_module(dualize_module(M), d).same(M)
        ident = LinMap(Tensor.eye(QQ, M.dim))
        assert check_morphism(ident, M, M).passed


def test_zero_module():
    d = example_datum(g3(), "ex1")
    Z = zero_module(d)
    assert Z.dim == 0 and check_module(Z).passed
    assert dualize_module(Z).dim == 0
    M = harvest_modules(d)[0]
    assert hom_space(Z, M).dim == 0 and hom_space(M, Z).dim == 0


@pytest.mark.parametrize("base", ["g2", "g3", "g4"])
def test_hopf_module(base):
    d = example_datum(by_name(base), "ex3")
    assert check_module(hopf_module(d)).passed


def test_zero_coaction_on_A_fails_counit():
    d = example_datum(g2(), "ex3")
    M = DoiHopfModule(d, d.H.mult, Tensor.zeros(QQ, (2, 2, 2)))
    r = check_module(M)
    c = r.get("comodule.counit")
    assert not c.passed and c.witness is not None


def test_non_intertwining_map_fails():
    d = example_datum(g2(), "ex3")
    M = hopf_module(d)
    # swap e and g: commutes with the action of G2 but not with the coaction
    T = LinMap(Tensor.from_values(QQ, [[0, 1], [1, 0]]))
    r = check_morphism(T, M, M)
    assert not r.get("intertwines.coaction").passed
    assert check_morphism(LinMap(Tensor.zeros(QQ, (2, 2))), M, M).passed


@pytest.mark.parametrize("base,ex", [(b, e) for b in ("g2", "g3") for e in ("ex1", "ex3")])
def test_hom_dimension_preserved_by_duality(base, ex):
    d = example_datum(by_name(base), ex)
    mods = harvest_modules(d)
    dual = dual_datum(d)
    for M, N in itertools.product(mods, repeat=2):
        Mh, Nh = dualize_module(M, dual), dualize_module(N, dual)
        assert hom_space(M, N).dim == hom_space(Nh, Mh).dim
        for T in hom_basis(M, N):
            assert check_morphism(T, M, N).passed
            assert check_morphism(dualize_morphism(T), Nh, Mh).passed


@pytest.mark.parametrize("base,ex", [("g2", "ex3"), ("g3", "ex1"), ("g4", "ex2")])
def test_endomorphisms_form_an_algebra(base, ex):
    d = example_datum(by_name(base), ex)
    for M in harvest_modules(d):
        sp = hom_space(M, M)
        assert sp.contains(Tensor.eye(QQ, M.dim).reshape(-1))
        B = [T.matrix for T in hom_basis(M, M)]
        for X, Y in itertools.product(B, repeat=2):
            assert sp.contains((X @ Y).reshape(-1))


@settings(max_examples=30)
@given(st.sampled_from(["g2", "g3", "g4"]), st.sampled_from(["ex1", "ex2", "ex3"]), st.data())
def test_generated_submodules_are_modules(base, ex, data):
    d = example_datum(by_name(base), ex)
    M = harvest_modules(d)[0]
    coeffs = data.draw(st.lists(st.integers(-3, 3), min_size=M.dim, max_size=M.dim))
    v = Tensor.from_values(QQ, [coeffs])
    N = generated_submodule(M, v)
    if N.dim:
        S = submodule(M, N)
        assert check_module(S).passed
        inc = LinMap(N.basis.T)
        assert check_morphism(inc, S, M).passed


@settings(max_examples=20)
@given(st.sampled_from(["g2", "g3"]), st.permutations(range(2)))
def test_transport_preserves_module_axioms(base, perm):
    d = example_datum(by_name(base), "ex3")
    M = hopf_module(d)
    P = Tensor(QQ, np.eye(2, dtype=np.int64)[list(perm)])
    assert check_module(M.transport(P, P.T)).passed


def test_transport_g4_shear():
    d = example_datum(g4(), "ex3")
    M = hopf_module(d)
    P = Tensor.eye(QQ, 4) + Tensor.from_values(QQ, [[0, 2, 0, 0]] + [[0] * 4] * 3)
    Pinv = Tensor.eye(QQ, 4) - Tensor.from_values(QQ, [[0, 2, 0, 0]] + [[0] * 4] * 3)
    assert P @ Pinv == Tensor.eye(QQ, 4)
    Mt = M.transport(P, Pinv)
    assert check_module(Mt).passed
    assert check_morphism(LinMap(P), M, Mt).passed


def test_regular_instance_of_ex2_g3():
    d = example_datum(g3(), "ex2")
    # C = H, so the projection onto C is the identity and rho_M is the datum's coaction
    M = DoiHopfModule(d, d.A.mult, d.rho)
    assert check_module(M).passed


def test_random_map_on_hopf_module_fails():
    d = example_datum(g2(), "ex3")
    M = hopf_module(d)
    rng = np.random.default_rng(20260)
    T = LinMap(Tensor(QQ, rng.integers(-5, 6, size=(2, 2))))
    assert hom_space(M, M).dim == 1  # only scalars
    r = check_morphism(T, M, M)
    assert not r.passed
    assert r.failures()[0].witness["index"] is not None
