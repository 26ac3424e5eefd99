"""Weak smash products A#C^ of right Doi-Hopf data and the module isomorphism.

The ambient space A (x) C^ is indexed ``(a, x)`` with ``x`` running over the
dual basis gamma^x of C^.  Elements of the smash product live in the image of

    a (x) c^  ->  1_(0) a (x) 1_(-1) |> c^,      (h |> c^)(c) = c^(c.h).
"""

from __future__ import annotations

from dataclasses import dataclass

from .doihopf import DoiHopfDatum, DoiHopfModule, check_module
from .double import DrinfeldDouble, YDModule, build_twisted_double, yd_vs_double
from .errors import AssociativityFailure, DegenerateDatum, NotAnIso
from .gallery import ex4_datum, ex4_host
from .hopfcore import (
    Algebra,
    RightModule,
    WeakHopfAlgebra,
    check_algebra,
    check_right_module,
    cyclic_submodule,
    regular_module,
    subalgebra,
    submodule_of,
)
from .kernel import LinMap, Subspace, Tensor, ein, image_of
from .report import Report


@dataclass(frozen=True, eq=False)
class SmashAlgebra:
    datum: DoiHopfDatum
    carrier: Subspace
    algebra: Algebra
    truncation: Tensor  # the map E above, [out, in] on the ambient space

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def embed(self) -> LinMap:
        return LinMap(self.carrier.embedding())

    @property
    def project(self) -> LinMap:
        """Carrier coordinates of E(v); a retraction of ``embed`` when E fixes the carrier."""
        return LinMap(self.carrier.coords(self.truncation.T, axis=1).T)

    def element(self, a: Tensor, chat: Tensor) -> Tensor:
        """Carrier coordinates of 1_(0) a # 1_(-1) |> chat."""
        return self.carrier.coords(self.truncation @ ein("a,x->ax", a, chat).reshape(-1))


def truncation_map(d: DoiHopfDatum) -> Tensor:
    """``E[(k, y), (a, x)]``."""
    nA, nC = d.A.dim, d.C.dim
    rho1 = d.coaction.rho_one
    E = ein("hb,bak,yhx->kyax", rho1, d.A.mult, d.act)
    return E.reshape(nA * nC, nA * nC)


def smash_product_tensor(d: DoiHopfDatum) -> Tensor:
    """(a # gamma^x)(b # gamma^z) = a_(0) b # gamma^x (a_(-1) |> gamma^z), as ``mu[a, x, b, z, k, c]``."""
    return ein("ahp,pbk,yhz,cxy->axbzkc", d.rho, d.A.mult, d.act, d.C.comult)


def _require_right_nondegenerate(d: DoiHopfDatum) -> None:
    if d.side != "right":
        raise DegenerateDatum("smash products are defined for right data")
    if not d.nondegenerate:
        raise DegenerateDatum("datum is degenerate")


def build_smash(d: DoiHopfDatum) -> SmashAlgebra:
    _require_right_nondegenerate(d)
    N = d.A.dim * d.C.dim
    E = truncation_map(d)
    carrier = image_of(E)
    mu = smash_product_tensor(d).reshape(N, N, N)
    B = carrier.basis
    prods = ein("ia,jb,abk->ijk", B, B, mu)
    if not all(carrier.contains(prods[i, j]) for i in range(carrier.dim) for j in range(carrier.dim)):
        raise AssociativityFailure("product does not close on the carrier")
    mult = carrier.coords(prods, axis=2)
    unit_amb = E @ ein("a,x->ax", d.A.unit, d.C.counit).reshape(N)
    alg = Algebra(d.field, mult, carrier.coords(unit_amb), tuple(f"s{i}" for i in range(carrier.dim)))
    check_algebra(alg).raise_if_failed(AssociativityFailure)
    return SmashAlgebra(d, carrier, alg, E)


def check_smash(S: SmashAlgebra) -> Report:
    r = Report("smash product")
    r.extend(check_algebra(S.algebra), "algebra.")
    E = S.truncation
    r.expect("carrier.image", "carrier = image of the truncation", image_of(E) == S.carrier)
    r.expect_equal("carrier.fixed", "E restricted to the carrier is the identity",
                   ein("ia,ka->ik", S.carrier.basis, E), S.carrier.basis)
    return r


# ---------------------------------------------------------------------------
# comparison isomorphisms


def matrix_algebra(field, n: int) -> Algebra:
    """End(k^n) with composition; e_(i,j) e_(j,k) = e_(i,k)."""
    I = Tensor.eye(field, n)
    T = ein("ip,jl,kq->ijlkpq", I, I, I)
    return Algebra(field, T.reshape(n * n, n * n, n * n), I.reshape(n * n))


def weyl_realization(H: WeakHopfAlgebra) -> tuple[Algebra, Subspace, Tensor]:
    """The Heisenberg double as operators on H^: phi acts by left multiplication, a by psi -> psi(. a).

    Returns (the operator algebra W, W as a subspace of End(H^), and ``J[(z, w), (a, x)]``,
    the matrix entries of L_beta^x o (e_a ->) as an operator [out z, in w]).
    """
    n = H.dim
    J = ein("zxy,yaw->zwax", H.comult, H.mult).reshape(n * n, n * n)
    End = matrix_algebra(H.field, n)
    W = image_of(J)
    while True:
        prods = ein("ia,jb,abk->ijk", W.basis, W.basis, End.mult).reshape(-1, n * n)
        bigger = W + Subspace.span(prods, n * n)
        if bigger.dim == W.dim:
            break
        W = bigger
    return subalgebra(End, W, tuple(f"w{i}" for i in range(W.dim))), W, J


def check_iso(S: SmashAlgebra, J: Tensor, target: Algebra, label: str,
              on_truncations: bool = False) -> tuple[LinMap, Report]:
    """Restrict the ambient map ``J`` to the carrier and check it is an algebra isomorphism onto ``target``.

    With ``on_truncations`` the map is specified by iota(E(x)) = J(x), which is
    only consistent when J factors through E; that is checked as well.
    """
    r = Report(f"iota ({label})")
    if on_truncations:
        r.expect_equal("well_defined", "iota(E(x)) = J(x) on the ambient space", J @ S.truncation, J)
    iota = LinMap(ein("ka,ia->ki", J, S.carrier.basis))
    r.expect("bijective", "iota is bijective", iota.is_bijective(),
             {"rank": iota.rank(), "dims": [iota.codomain_dim, iota.domain_dim]})
    r.expect_equal("unital", "iota(1) = 1", iota(S.algebra.unit), target.unit)
    X = iota.matrix
    r.expect_equal("multiplicative", "iota(xy) = iota(x) iota(y)",
                   ein("ijk,ok->ijo", S.algebra.mult, X), ein("pi,qj,pqo->ijo", X, X, target.mult),
                   ("x", "y", "out"))
    return iota, r


def example_target(d: DoiHopfDatum, which: str) -> tuple[Algebra, Tensor]:
    """The comparison algebra and the ambient map J for the standard example ``which``."""
    H = d.H
    f = d.field
    nA, nC = d.A.dim, d.C.dim
    if which == "ex1":
        # iota(a # c^) = c^(1) a, with 1 in H^L coordinates
        one = H.HL.coords(H.unit)
        J = ein("ka,x->kax", Tensor.eye(f, nA), one).reshape(nA, nA * nC)
        return H.algebra, J
    if which == "ex2":
        # iota(a^L # phi) = eps(a^L) phi
        eps_A = ein("ik,k->i", H.HL.basis, H.counit)
        J = ein("a,fx->fax", eps_A, Tensor.eye(f, nC)).reshape(nC, nA * nC)
        return H.dual().algebra, J
    if which == "ex3":
        W, Wsp, Jend = weyl_realization(H)
        return W, Wsp.coords(Jend.T, axis=1).T
    raise ValueError(f"unknown example {which!r}")


def twisted_double_target(K: WeakHopfAlgebra) -> tuple[Algebra, Tensor]:
    """X = D(K^op_cop)^op with J(a # phi) = D(phi)D(a), i.e. the class of a (x) phi."""
    X, D = build_twisted_double(K)
    return X, D.proj.matrix


def example_iso(d: DoiHopfDatum, which: str, K: WeakHopfAlgebra | None = None,
                S: SmashAlgebra | None = None) -> tuple[LinMap, Report]:
    """iota for the standard example ``which``; ex4 needs the algebra ``K`` with d = ex4_datum(K)."""
    S = S or build_smash(d)
    if which == "ex4":
        if K is None or not ex4_host(K).same(d.H):
            raise ValueError("ex4 needs K with d built from K")
        target, J = twisted_double_target(K)
    else:
        target, J = example_target(d, which)
    iota, r = check_iso(S, J, target, which, on_truncations=which in ("ex3", "ex4"))
    if not r.passed:
        bad = r.failures()[0]
        raise NotAnIso(f"{which}: {bad.id} failed", r)
    return iota, r


# ---------------------------------------------------------------------------
# the functors P and P'


def functor_P(M: DoiHopfModule, S: SmashAlgebra) -> RightModule:
    """m . (a # c^) = c^(m_(-1)) m_(0) . a."""
    amb = ein("mxy,yan->maxn", M.rho, M.act).reshape(M.dim, M.datum.A.dim * M.datum.C.dim, M.dim)
    return RightModule(S.algebra, ein("ia,man->min", S.carrier.basis, amb))


def functor_Pprime(N: RightModule, S: SmashAlgebra) -> DoiHopfModule:
    """m . a = m . E(a # eps) and rho(m) = sum_c c (x) m . E(1 # gamma^c)."""
    d = S.datum
    f = d.field
    nA, nC = d.A.dim, d.C.dim
    E = S.truncation
    Ea = S.carrier.coords((E @ ein("ab,x->abx", Tensor.eye(f, nA), d.C.counit).reshape(nA, -1).T).T, axis=1)
    Ec = S.carrier.coords((E @ ein("b,cx->cbx", d.A.unit, Tensor.eye(f, nC)).reshape(nC, -1).T).T, axis=1)
    act = ein("ai,min->man", Ea, N.act)
    rho = ein("ci,min->mcn", Ec, N.act)
    return DoiHopfModule(d, act, rho)


def check_functors(M: DoiHopfModule | None, N: RightModule | None, S: SmashAlgebra) -> Report:
    """P'P = id on ``M`` and PP' = id on ``N`` (either may be None)."""
    r = Report("category isomorphism")
    if M is not None:
        PM = functor_P(M, S)
        r.extend(check_right_module(PM), "P.")
        back = functor_Pprime(PM, S)
        r.expect_equal("PprimeP.action", "P'(P(M)) has the action of M", back.act, M.act)
        r.expect_equal("PprimeP.coaction", "P'(P(M)) has the coaction of M", back.rho, M.rho)
    if N is not None:
        PN = functor_Pprime(N, S)
        r.extend(check_module(PN), "Pprime.")
        r.expect_equal("PPprime", "P(P'(N)) = N", functor_P(PN, S).act, N.act)
    return r


def harvest_smash_modules(S: SmashAlgebra) -> list[RightModule]:
    """The regular module and the cyclic submodules generated by basis vectors, without repeats."""
    reg = regular_module(S.algebra)
    mods = [reg]
    seen = {Subspace.full(S.datum.field, S.dim)}
    for i in range(S.dim):
        sub = cyclic_submodule(reg, Tensor.unit_vector(S.datum.field, S.dim, i))
        if sub not in seen:
            seen.add(sub)
            mods.append(submodule_of(reg, sub))
    return mods


def harvest_modules(d: DoiHopfDatum, S: SmashAlgebra | None = None) -> list[DoiHopfModule]:
    """Doi-Hopf modules obtained from the smash harvest by P'."""
    S = S or build_smash(d)
    return [functor_Pprime(N, S) for N in harvest_smash_modules(S)]


# ---------------------------------------------------------------------------
# YD modules through the twisted double


def yd_via_twisted_double(Y: YDModule, D: DrinfeldDouble | None = None) -> tuple[RightModule, Report]:
    """Y as a Doi-Hopf module over ex4_datum(H), then P, then iota: a right D(H^op_cop)^op-module.

    The report also compares the operators on Y with those of the direct
    D(H)-module structure: both realize the same subalgebra of End(Y).
    """
    H = Y.H
    d = ex4_datum(H)
    r = Report("YD -> twisted double module")
    M = DoiHopfModule(d, Y.act, Y.rho)
    r.extend(check_module(M), "doihopf.")
    S = build_smash(d)
    iota, rep = example_iso(d, "ex4", K=H, S=S)
    r.extend(rep, "iota.")
    inv = iota.inverse().matrix
    PM = functor_P(M, S)
    X = RightModule(twisted_double_target(H)[0], ein("it,min->mtn", inv, PM.act))
    r.extend(check_right_module(X), "module.")
    back = functor_Pprime(RightModule(S.algebra, ein("ti,mtn->min", iota.matrix, X.act)), S)
    r.expect_equal("roundtrip.action", "YD -> X-module -> YD is the identity (action)", back.act, Y.act)
    r.expect_equal("roundtrip.coaction", "YD -> X-module -> YD is the identity (coaction)", back.rho, Y.rho)
    direct, _ = yd_vs_double(Y, D)

    def ops(t: Tensor) -> Subspace:
        return Subspace.span(t.transpose(1, 0, 2).reshape(t.shape[1], -1), Y.dim * Y.dim)

    if Y.dim:
        r.expect("same_operators", "both module structures span the same operators on Y",
                 ops(X.act) == ops(direct.act))
    return X, r


__all__ = [
    "SmashAlgebra",
    "build_smash",
    "check_functors",
    "check_iso",
    "check_smash",
    "example_iso",
    "functor_P",
    "functor_Pprime",
    "harvest_modules",
    "harvest_smash_modules",
    "matrix_algebra",
    "smash_product_tensor",
    "truncation_map",
    "twisted_double_target",
    "weyl_realization",
    "yd_via_twisted_double",
]
