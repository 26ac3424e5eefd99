"""Induction and coinduction for right Doi-Hopf data, with units, counits and triangle identities.

``F`` forgets the C-coaction of a Doi-Hopf module and ``G`` sends a right
A-module N to C.1_(-1) (x) N.1_(0) inside C (x) N.  ``F^`` forgets the
A-action and ``G^`` sends a left C-comodule M to the span of
eps_C(m_(-1).a_(-1)) m_(0) (x) a_(0) inside M (x) A.

The adjunction data are

    rho_M : M -> G F M,   m -> m_(-1) (x) m_(0)        (unit, a Doi-Hopf morphism)
    delta_N : F G N -> N, c (x) n -> eps_C(c) n        (counit, an A-module map)
    rho^_M : M -> F^ G^ M, m -> class of m (x) 1       (unit, a comodule map)
    delta^_N : G^ F^ N -> N, m (x) a -> m.a            (counit, a Doi-Hopf morphism)
"""

from __future__ import annotations

from dataclasses import dataclass

from .doihopf import DoiHopfDatum, DoiHopfModule, check_module, check_morphism, hom_basis
from .errors import DegenerateDatum, DimMismatch
from .hopfcore import Coalgebra, RightModule, check_right_module, module_hom_space, regular_module
from .kernel import LinMap, Subspace, Tensor, ein, image_of, solve_homogeneous
from .report import Report


@dataclass(frozen=True, eq=False)
class Comodule:
    """Left C-comodule ``rho[m, c, m']``: rho(e_m) = sum rho[m, c, m'] e_c (x) e_m'."""

    coalgebra: Coalgebra
    rho: Tensor

    def __post_init__(self):
        m = self.rho.shape[0]
        if self.rho.shape != (m, self.coalgebra.dim, m):
            raise DimMismatch(f"comodule coaction shape {self.rho.shape}")

    @property
    def dim(self) -> int:
        return self.rho.shape[0]


def check_comodule(M: Comodule) -> Report:
    C, rho = M.coalgebra, M.rho
    r = Report("left comodule")
    r.expect_equal("coassociative", "(id x rho)rho = (D_C x id)rho",
                   ein("mcx,xdy->mcdy", rho, rho), ein("mky,kcd->mcdy", rho, C.comult))
    r.expect_equal("counit", "(eps_C x id)rho = id", ein("mcx,c->mx", rho, C.counit), Tensor.eye(C.field, M.dim))
    return r


def comodule_hom_space(M: Comodule, N: Comodule) -> Subspace:
    return solve_homogeneous(
        lambda X: [ein("xm,xcy->mcy", X, N.rho) - ein("mcx,yx->mcy", M.rho, X)],
        (N.dim, M.dim), M.coalgebra.field,
    )


def forget_coaction(M: DoiHopfModule) -> RightModule:
    return RightModule(M.datum.A, M.act)


def forget_action(M: DoiHopfModule) -> Comodule:
    return Comodule(M.datum.C, M.rho)


def _require(d: DoiHopfDatum) -> None:
    if d.side != "right" or not d.nondegenerate:
        raise DegenerateDatum("induction needs a non-degenerate right datum")


# ---------------------------------------------------------------------------
# G


@dataclass(frozen=True, eq=False)
class InducedModule:
    base: RightModule
    carrier: Subspace  # inside C (x) N
    module: DoiHopfModule


def induce_G(N: RightModule, d: DoiHopfDatum) -> InducedModule:
    _require(d)
    nC = d.C.dim
    n = nC * N.dim
    Q = ein("hb,chx,nby->xycn", d.coaction.rho_one, d.act, N.act).reshape(n, n)
    carrier = image_of(Q)
    act = ein("ahb,chx,nby->cnaxy", d.rho, d.act, N.act).reshape(n, d.A.dim, n)
    rho = ein("cxy,nm->cnxym", d.C.comult, Tensor.eye(d.field, N.dim)).reshape(n, nC, n)
    B = carrier.basis
    M = DoiHopfModule(
        d,
        carrier.coords(ein("ia,abk->ibk", B, act), axis=2),
        carrier.coords(ein("ia,abk->ibk", B, rho), axis=2),
    )
    return InducedModule(N, carrier, M)


def induce_G_morphism(GN: InducedModule, GN2: InducedModule, T: LinMap) -> LinMap:
    """G(T) = id_C (x) T between carriers."""
    d = GN.module.datum
    K = ein("cx,mn->cmxn", Tensor.eye(d.field, d.C.dim), T.matrix).reshape(GN2.carrier.ambient_dim, GN.carrier.ambient_dim)
    images = ein("ia,ka->ik", GN.carrier.basis, K)
    return LinMap(GN2.carrier.coords(images, axis=1).T)


def unit_rho(M: DoiHopfModule, GFM: InducedModule) -> LinMap:
    """m -> m_(-1) (x) m_(0) in carrier coordinates of G(F(M))."""
    amb = M.rho.reshape(M.dim, M.datum.C.dim * M.dim)
    return LinMap(GFM.carrier.coords(amb, axis=1).T)


def counit_delta(GN: InducedModule) -> LinMap:
    """c (x) n -> eps_C(c) n, from the carrier of G(N) to N."""
    d = GN.module.datum
    N = GN.base
    eps = ein("c,nm->mcn", d.C.counit, Tensor.eye(d.field, N.dim)).reshape(N.dim, d.C.dim * N.dim)
    return LinMap(ein("ma,ia->mi", eps, GN.carrier.basis))


# ---------------------------------------------------------------------------
# G^


@dataclass(frozen=True, eq=False)
class CoinducedModule:
    base: Comodule
    carrier: Subspace  # inside M (x) A
    truncation: Tensor
    module: DoiHopfModule


def coinduce_Ghat(M: Comodule, d: DoiHopfDatum) -> CoinducedModule:
    _require(d)
    nA = d.A.dim
    n = M.dim * nA
    # m (x) a -> eps_C(m_(-1).a_(-1)) m_(0) (x) a_(0)
    Q = ein("mcx,ahb,chy,y->xbma", M.rho, d.rho, d.act, d.C.counit).reshape(n, n)
    carrier = image_of(Q)
    # (m (x) a).b = Q(m (x) ab)
    act = ein("abk,xymk->mabxy", d.A.mult, Q.reshape(M.dim, nA, M.dim, nA)).reshape(n, nA, n)
    rho = ein("mcx,ahb,chy->mayxb", M.rho, d.rho, d.act).reshape(n, d.C.dim, n)
    B = carrier.basis
    DM = DoiHopfModule(
        d,
        carrier.coords(ein("ia,abk->ibk", B, act), axis=2),
        carrier.coords(ein("ia,abk->ibk", B, rho), axis=2),
    )
    return CoinducedModule(M, carrier, Q, DM)


def coinduce_morphism(GM: CoinducedModule, GM2: CoinducedModule, T: LinMap) -> LinMap:
    """G^(T) = T (x) id_A between carriers."""
    d = GM.module.datum
    K = ein("xm,ab->xamb", T.matrix, Tensor.eye(d.field, d.A.dim)).reshape(GM2.carrier.ambient_dim, GM.carrier.ambient_dim)
    images = ein("ia,ka->ik", GM.carrier.basis, K)
    return LinMap(GM2.carrier.coords(images, axis=1).T)


def unit_rho_hat(GM: CoinducedModule) -> LinMap:
    """m -> class of m (x) 1_A, a comodule map M -> F^ G^ M."""
    d = GM.module.datum
    M = GM.base
    amb = ein("pma,a->pm", GM.truncation.reshape(M.dim * d.A.dim, M.dim, d.A.dim), d.A.unit)  # [out, m]
    return LinMap(GM.carrier.coords(amb.T, axis=1).T)


def counit_delta_hat(N: DoiHopfModule, GFN: CoinducedModule) -> LinMap:
    """m (x) a -> m.a, from the carrier of G^(F^(N)) to N."""
    amb = N.act.reshape(N.dim * N.datum.A.dim, N.dim).T  # [out, (m, a)]
    return LinMap(ein("ka,ia->ki", amb, GFN.carrier.basis))


# ---------------------------------------------------------------------------
# checks


def check_truncation_identities(d: DoiHopfDatum) -> Report:
    _require(d)
    r = Report("truncation identities")
    rho1, actC, dC = d.coaction.rho_one, d.act, d.C.comult
    r.expect_equal(
        "truncation.i", "D_C(c.1_(-1)) (x) 1_(0) = c_(1) (x) c_(2).1_(-1) (x) 1_(0)",
        ein("hb,chz,zxy->cxyb", rho1, actC, dC), ein("hb,cxz,zhy->cxyb", rho1, dC, actC), ("c", "1", "2", "a"),
    )
    PiL = d.H.pi_L.matrix
    r.expect_equal(
        "truncation.ii", "Pi^L(a_(-1)) (x) a_(0) = Pi^L(1_(-1)) (x) 1_(0) a",
        ein("ahb,xh->axb", d.rho, PiL), ein("hb,xh,bak->axk", rho1, PiL, d.A.mult), ("a", "h", "out"),
    )
    return r


def check_adjunction(d: DoiHopfDatum, modules: list[DoiHopfModule], a_modules: list[RightModule] = (),
                     comodules: list[Comodule] = ()) -> Report:
    """Units, counits, naturality and triangle identities for F -| G and G^ -| F^.

    ``modules`` are Doi-Hopf modules; their underlying A-modules and C-comodules are
    added to ``a_modules`` and ``comodules``.  Hom-sets for naturality come from
    the homogeneous solvers, so every morphism used is a genuine morphism.
    """
    _require(d)
    r = Report("adjunctions")
    r.extend(check_truncation_identities(d))
    f = d.field
    a_mods = list(a_modules) + [forget_coaction(M) for M in modules]
    co_mods = list(comodules) + [forget_action(M) for M in modules]

    # F -| G
    GF = [induce_G(forget_coaction(M), d) for M in modules]
    for i, (M, GFM) in enumerate(zip(modules, GF)):
        r.extend(check_module(GFM.module), f"G.{i}.")
        rho = unit_rho(M, GFM)
        r.extend(check_morphism(rho, M, GFM.module), f"unit.{i}.")
        # (delta F)(F rho) = id_F
        r.expect_equal(f"triangle.F.{i}", "delta_F(M) o rho_M = id", (counit_delta(GFM) @ rho).matrix,
                       Tensor.eye(f, M.dim))
    G = [induce_G(N, d) for N in a_mods]
    for i, (N, GN) in enumerate(zip(a_mods, G)):
        r.extend(check_right_module(N), f"amod.{i}.")
        r.extend(check_module(GN.module), f"G.amod.{i}.")
        delta = counit_delta(GN)
        r.expect_equal(f"counit.{i}", "delta_N is A-linear",
                       ein("max,yx->may", GN.module.act, delta.matrix), ein("xm,xay->may", delta.matrix, N.act))
        # (G delta)(rho G) = id_G
        GFGN = induce_G(forget_coaction(GN.module), d)
        composite = induce_G_morphism(GFGN, GN, delta) @ unit_rho(GN.module, GFGN)
        r.expect_equal(f"triangle.G.{i}", "G(delta_N) o rho_G(N) = id", composite.matrix, Tensor.eye(f, GN.module.dim))
    for i, j in _pairs(len(modules)):
        for k, T in enumerate(hom_basis(modules[i], modules[j])):
            lhs = induce_G_morphism(GF[i], GF[j], T) @ unit_rho(modules[i], GF[i])
            rhs = unit_rho(modules[j], GF[j]) @ T
            r.expect_equal(f"natural.unit.{i}.{j}.{k}", "GF(T) rho = rho T", lhs.matrix, rhs.matrix)
    for i, j in _pairs(len(a_mods)):
        sp = module_hom_space(a_mods[i], a_mods[j])
        for k in range(sp.dim):
            T = LinMap(sp.basis[k].reshape(a_mods[j].dim, a_mods[i].dim))
            lhs = T @ counit_delta(G[i])
            rhs = counit_delta(G[j]) @ induce_G_morphism(G[i], G[j], T)
            r.expect_equal(f"natural.counit.{i}.{j}.{k}", "T delta = delta FG(T)", lhs.matrix, rhs.matrix)

    # G^ -| F^
    Gh = [coinduce_Ghat(M, d) for M in co_mods]
    for i, (M, GM) in enumerate(zip(co_mods, Gh)):
        r.extend(check_comodule(M), f"comod.{i}.")
        r.extend(check_module(GM.module), f"Ghat.{i}.")
        rh = unit_rho_hat(GM)
        r.expect_equal(f"unit_hat.{i}", "rho^_M is C-colinear",
                       ein("xm,xcy->mcy", rh.matrix, GM.module.rho), ein("mcx,yx->mcy", M.rho, rh.matrix))
    GhF = [coinduce_Ghat(forget_action(N), d) for N in modules]
    for i, (N, GFN) in enumerate(zip(modules, GhF)):
        dh = counit_delta_hat(N, GFN)
        r.extend(check_morphism(dh, GFN.module, N), f"counit_hat.{i}.")
        # (F^ delta^)(rho^ F^) = id_F^
        r.expect_equal(f"triangle.Fhat.{i}", "delta^_N o rho^_F^(N) = id", (dh @ unit_rho_hat(GFN)).matrix,
                       Tensor.eye(f, N.dim))
    for i, (M, GM) in enumerate(zip(co_mods, Gh)):
        # (delta^ G^)(G^ rho^) = id_G^
        GFGM = coinduce_Ghat(forget_action(GM.module), d)
        composite = counit_delta_hat(GM.module, GFGM) @ coinduce_morphism(GM, GFGM, unit_rho_hat(GM))
        r.expect_equal(f"triangle.Ghat.{i}", "delta^_G^(M) o G^(rho^_M) = id", composite.matrix,
                       Tensor.eye(f, GM.module.dim))
    for i, j in _pairs(len(co_mods)):
        sp = comodule_hom_space(co_mods[i], co_mods[j])
        for k in range(sp.dim):
            T = LinMap(sp.basis[k].reshape(co_mods[j].dim, co_mods[i].dim))
            lhs = coinduce_morphism(Gh[i], Gh[j], T) @ unit_rho_hat(Gh[i])
            rhs = unit_rho_hat(Gh[j]) @ T
            r.expect_equal(f"natural.unit_hat.{i}.{j}.{k}", "F^G^(T) rho^ = rho^ T", lhs.matrix, rhs.matrix)
    for i, j in _pairs(len(modules)):
        for k, T in enumerate(hom_basis(modules[i], modules[j])):
            lhs = T @ counit_delta_hat(modules[i], GhF[i])
            rhs = counit_delta_hat(modules[j], GhF[j]) @ coinduce_morphism(GhF[i], GhF[j], T)
            r.expect_equal(f"natural.counit_hat.{i}.{j}.{k}", "T delta^ = delta^ G^F^(T)", lhs.matrix, rhs.matrix)
    return r


def _pairs(n: int):
    return [(i, j) for i in range(n) for j in range(n)]


def standard_modules(d: DoiHopfDatum) -> tuple[list[RightModule], list[Comodule]]:
    """The regular A-module and the regular C-comodule."""
    return [regular_module(d.A)], [Comodule(d.C, d.C.comult)]
