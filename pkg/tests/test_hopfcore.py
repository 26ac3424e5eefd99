import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from whk.errors import AntipodeNotInvertible, AxiomFailure
from whk.gallery import by_name, g2, g3, g4, pair, zn
from whk.hopfcore import (
    WeakBialgebra,
    WeakHopfAlgebra,
    check_wba,
    check_wha,
    dual_hit,
    hit,
    hit_right,
    op_cop_variants,
    projections,
    tensor_wba,
)
from whk.kernel import QQ, Field, Subspace, Tensor, ein, rank
from whk.suites import mutations

F7 = Field.prime(7)
WHA_NAMES = ["g2", "g3", "g4", "dual:g4", "zn(3)"]


def relabel(H, perm):
    """Structure constants of H in the basis e'_i = e_perm[i]."""
    P = Tensor(H.field, np.eye(H.dim, dtype=np.int64)[perm])  # P[i, a] = 1 iff a = perm[i]
    return WeakBialgebra(
        H.field,
        ein("ia,jb,abk,lk->ijl", P, P, H.mult, P),
        ein("a,ia->i", H.unit, P),
        ein("ia,abc,jb,kc->ijk", P, H.comult, P, P),
        ein("a,ia->i", H.counit, P),
    )


@pytest.mark.parametrize("name", WHA_NAMES)
@pytest.mark.parametrize("fld", [QQ, F7], ids=str)
def test_gallery_passes_check_wha(name, fld):
    r = check_wha(by_name(name, fld))
    assert r.passed, r.to_text()


def test_g3_is_weak():
    r = check_wba(g3())
    assert r.passed
    note = r.get("weakness").note
    assert "counit multiplicative: False" in note
    H = g3()
    e1, e2 = H.basis_vector(0), H.basis_vector(1)
    assert H.eps(H.mul(e1, e2)) == 0 and H.eps(e1) * H.eps(e2) == 1


def test_g2_is_not_weak():
    assert "counit multiplicative: True; Delta(1) = 1 (x) 1: True" in check_wba(g2()).get("weakness").note


def test_zero_counit_fails_with_witness():
    H = g2()
    broken = WeakBialgebra(H.field, H.mult, H.unit, H.comult, Tensor.zeros(QQ, (2,)))
    r = check_wba(broken)
    c = r.get("coalgebra.counit.left")
    assert not c.passed and c.witness["index"] is not None


def test_g4_antipode_squares_to_identity():
    H = g4()
    assert check_wha(H).passed
    assert H.antipode @ H.antipode == Tensor.eye(QQ, 4)


def test_g2_with_identity_antipode_passes():
    H = g2()
    assert H.antipode == Tensor.eye(QQ, 2)
    assert check_wha(WeakHopfAlgebra.from_wba(H.wba, Tensor.eye(QQ, 2))).passed


def test_g4_with_identity_antipode_fails_at_e12():
    H = g4()
    bad = WeakHopfAlgebra.from_wba(H.wba, Tensor.eye(QQ, 4))
    c = check_wha(bad).get("antipode.left")
    assert not c.passed
    # h = e12: e12 S(e12) = e12 e12 = 0 but Pi^L(e12) = e11
    assert H.names[c.witness["index"][0]] == "e12"


@pytest.mark.parametrize("name", WHA_NAMES)
@pytest.mark.parametrize("fld", [QQ, F7], ids=str)
def test_every_single_entry_mutation_fails(name, fld):
    H = by_name(name, fld)
    count = 0
    for tensor_name, idx, Hm in mutations(H):
        r = check_wha(Hm)
        bad = r.failures()
        assert bad, f"{tensor_name}{idx} not detected"
        assert bad[0].witness is not None
        count += 1
    n = H.dim
    assert count == 2 * n**3 + 2 * n + n * n


def test_projections_g2_g3():
    PL, PR = projections(g2())
    eps_one = ein("a,b->ba", g2().counit, g2().unit)  # h -> eps(h) 1
    assert PL.matrix == eps_one and PR.matrix == eps_one and rank(PL.matrix) == 1
    PL, PR = projections(g3())
    assert PL.matrix == Tensor.eye(QQ, 2) and PR.matrix == Tensor.eye(QQ, 2)


@pytest.mark.parametrize("name", WHA_NAMES)
def test_projection_invariants(name):
    H = by_name(name)
    PL, PR = H.pi_L.matrix, H.pi_R.matrix
    assert PL @ PL == PL and PR @ PR == PR
    assert H.HL.dim == H.HR.dim == rank(PL) == rank(PR)
    # S maps H^L onto H^R
    assert H.HR == Subspace.span(ein("ka,ia->ik", H.antipode, H.HL.basis))


@pytest.mark.parametrize("name", WHA_NAMES)
def test_antipode_unit_counit(name):
    H = by_name(name)
    assert H.antipode @ H.unit.reshape(-1, 1) == H.unit.reshape(-1, 1)
    assert ein("kh,k->h", H.antipode, H.counit) == H.counit


def test_dual_examples():
    H, D = g3(), g3().dual()
    for key in ("mult", "unit", "comult", "counit", "antipode"):
        assert getattr(D, key) == getattr(H, key), key
    Hh = g4().dual()
    names = g4().names
    idx = {nm: i for i, nm in enumerate(names)}
    want_mult = np.zeros((4, 4, 4), dtype=np.int64)
    want_comult = np.zeros((4, 4, 4), dtype=np.int64)
    for i in range(4):
        want_mult[i, i, i] = 1
    for a in (1, 2):
        for b in (1, 2):
            for k in (1, 2):
                want_comult[idx[f"e{a}{b}"], idx[f"e{a}{k}"], idx[f"e{k}{b}"]] = 1
    assert Hh.mult == Tensor(QQ, want_mult)
    assert Hh.comult == Tensor(QQ, want_comult)
    assert g2().dual().dual().same(g2())


@pytest.mark.parametrize("name", WHA_NAMES)
def test_dual_passes_and_is_involutive(name):
    H = by_name(name)
    assert check_wha(H.dual()).passed
    assert H.dual().dual().same(H)


def test_op_examples():
    assert g2().op().same(g2())
    # G4^op is G4 after e_ij -> e_ji
    H = g4()
    perm = [H.names.index(f"e{nm[2]}{nm[1]}") for nm in H.names]
    assert relabel(H.op().wba, perm).same(H.wba)


def test_tensor_example():
    T = tensor_wba(g2().op(), g2())
    assert T.dim == 4 and check_wba(T).passed
    assert isinstance(T, WeakHopfAlgebra) and check_wha(T).passed


@pytest.mark.parametrize("name", ["g2", "g3", "g4"])
def test_variants_commute_with_dual(name):
    H = by_name(name)
    for key, V in op_cop_variants(H).items():
        assert check_wha(V).passed, key
    # (H^op)^ = (H^)_cop and (H_cop)^ = (H^)^op
    assert H.op().dual().same(H.dual().cop())
    assert H.cop().dual().same(H.dual().op())
    K = g3()
    assert H.tensor(K).dual().same(H.dual().tensor(K.dual()))


def test_sweedler_arrows():
    H = g3()
    for i in range(2):
        for j in range(2):
            phi, e = H.basis_vector(i), H.basis_vector(j)
            want = H.basis_vector(i) if i == j else Tensor.zeros(QQ, (2,))
            assert hit(H, phi, e) == want
            assert hit_right(H, e, phi) == want
    G = g2()
    g, ghat = G.basis_vector(1), G.basis_vector(1)
    assert hit(G, ghat, g) == g
    # (g |> g^)(x) = g^(x g): value 1 at x = e, 0 at x = g
    e_hat = G.basis_vector(0)
    assert dual_hit(G, g, ghat) == e_hat


def test_singular_antipode_raises():
    H = g2()
    S0 = Tensor.zeros(QQ, (2, 2))
    bad = WeakHopfAlgebra.from_wba(H.wba, S0)
    with pytest.raises(AntipodeNotInvertible):
        bad.S_inv
    assert not bad.has_invertible_antipode
    assert not check_wha(bad).passed
    with pytest.raises(AxiomFailure):
        bad.validate()


@settings(max_examples=25)
@given(st.integers(1, 4), st.sampled_from([QQ, F7]))
def test_zn_and_pair_families(n, fld):
    assert check_wha(zn(n, fld)).passed
    if n <= 3:
        assert check_wha(pair(n, fld)).passed
