"""Integrals in weak Hopf algebras and the integral spaces V4 / V0 of right Doi-Hopf data.

Definitions used here: a right integral r satisfies r h = r Pi^R(h), a left
integral l satisfies h l = Pi^L(h) l, and r is non-degenerate when
phi -> phi -> r (= r_(1) phi(r_(2))) is a bijection H^ -> H.

An element gamma of V4 is stored as ``g[c, d, a]``: gamma(e_c)(e_d) = sum_a g[c, d, a] e_a.
"""

from __future__ import annotations

from dataclasses import dataclass

from .doihopf import DoiHopfDatum
from .double import build_twisted_double
from .errors import DegenerateDatum, Inconsistent, NoDualIntegral, NoNondegenerateIntegral, NotBijective
from .gallery import ex4_host
from .hopfcore import Algebra, WeakHopfAlgebra, commutant
from .kernel import (
    AffineSpace,
    LinMap,
    Subspace,
    Tensor,
    ein,
    linear_operator,
    rank,
    solve_homogeneous,
    solve_linear_system,
)
from .report import Report
from .smash import weyl_realization

CONVENTIONS = ("primary", "mirrored")


# ---------------------------------------------------------------------------
# integrals in H


@dataclass(frozen=True, eq=False)
class IntegralSpace:
    host: WeakHopfAlgebra
    side: str
    space: Subspace

    @property
    def nondegenerate(self) -> tuple[bool, ...]:
        """Non-degeneracy of each echelon basis element."""
        return tuple(is_nondegenerate_integral(self.host, self.space.basis[i]) for i in range(self.space.dim))


def _integral_residual(H: WeakHopfAlgebra, side: str):
    m = H.mult
    if side == "right":
        # r e_h - r Pi^R(e_h)
        return lambda r: ein("i,ihk->hk", r, m) - ein("i,xh,ixk->hk", r, H.pi_R.matrix, m)
    if side == "left":
        return lambda l: ein("i,hik->hk", l, m) - ein("i,xh,xik->hk", l, H.pi_L.matrix, m)
    raise ValueError(f"side must be 'left' or 'right', got {side!r}")


def integral_space(H: WeakHopfAlgebra, side: str) -> IntegralSpace:
    res = _integral_residual(H, side)
    sp = solve_homogeneous(res, (H.dim,), H.field)
    return IntegralSpace(H, side, sp)


def is_integral(H: WeakHopfAlgebra, x: Tensor, side: str) -> bool:
    return _integral_residual(H, side)(x).is_zero()


def hit_integral_matrix(H: WeakHopfAlgebra, r: Tensor) -> Tensor:
    """[x, f]: coefficient of e_x in beta^f -> r."""
    return ein("i,ixf->xf", r, H.comult)


def is_nondegenerate_integral(H: WeakHopfAlgebra, r: Tensor) -> bool:
    return rank(hit_integral_matrix(H, r)) == H.dim


def nondegenerate_integral(H: WeakHopfAlgebra) -> Tensor:
    """A non-degenerate right integral: the first basis element that works, else the sum of the basis."""
    sp = integral_space(H, "right").space
    candidates = [sp.basis[i] for i in range(sp.dim)]
    if sp.dim > 1:
        candidates.append(ein("ia->a", sp.basis))
    for r in candidates:
        if is_nondegenerate_integral(H, r):
            return r
    raise NoNondegenerateIntegral(f"no non-degenerate right integral found among {len(candidates)} candidates")


def dual_right_integral(H: WeakHopfAlgebra, r: Tensor, convention: str = "primary") -> Tensor:
    """The right integral rho of H^ with rho(r_(1)) r_(2) = 1 (primary) or r_(1) rho(r_(2)) = 1 (mirrored)."""
    if not is_nondegenerate_integral(H, r):
        raise NoNondegenerateIntegral("r is degenerate")
    Hh = H.dual()
    I = integral_space(Hh, "right").space
    if I.dim == 0:
        raise NoDualIntegral("H^ has no right integrals")
    if convention == "primary":
        cond = ein("i,ixy,kx->yk", r, H.comult, I.basis)
    elif convention == "mirrored":
        cond = ein("i,ixy,ky->xk", r, H.comult, I.basis)
    else:
        raise ValueError(f"convention must be one of {CONVENTIONS}")
    try:
        sol = solve_linear_system([cond], [H.unit])
    except Inconsistent:
        raise NoDualIntegral(f"{convention} normalization has no solution") from None
    if not sol.is_unique:
        raise NoDualIntegral(f"{convention} normalization does not fix rho")
    return ein("k,kf->f", sol.particular, I.basis)


# ---------------------------------------------------------------------------
# V4


@dataclass(frozen=True, eq=False)
class V4Space:
    datum: DoiHopfDatum
    space: Subspace  # flattened g[c, d, a]

    @property
    def shape(self) -> tuple[int, int, int]:
        d = self.datum
        return d.C.dim, d.C.dim, d.A.dim

    def element(self, i: int) -> Tensor:
        return self.space.basis[i].reshape(*self.shape)


def v4_residual(d: DoiHopfDatum, g: Tensor) -> list[Tensor]:
    mA, dC, dH, actC, rho = d.A.mult, d.C.comult, d.H.comult, d.act, d.rho
    first = ein("cdx,xak->cdak", g, mA) - ein("ahb,hpq,cpu,dqv,uvy,byk->cdak", rho, dH, actC, actC, g, mA)
    second = ein("cxy,yda->cdxa", dC, g) - ein("dpq,cpy,yha,qhx->cdxa", dC, g, rho, actC)
    return [first, second]


def _require(d: DoiHopfDatum) -> None:
    if d.side != "right" or not d.nondegenerate:
        raise DegenerateDatum("integrals need a non-degenerate right datum")


def compute_V4(d: DoiHopfDatum) -> V4Space:
    _require(d)
    nC, nA = d.C.dim, d.A.dim
    sp = solve_homogeneous(lambda g: v4_residual(d, g), (nC, nC, nA), d.field)
    V = V4Space(d, sp)
    for i in range(sp.dim):
        if not all(t.is_zero() for t in v4_residual(d, V.element(i))):
            raise AssertionError("V4 basis element failed substitution")
    return V


def _normalization_sides(d: DoiHopfDatum, g: Tensor) -> tuple[Tensor, Tensor]:
    lhs = ein("cxy,xya->ca", d.C.comult, g)
    rhs = ein("hb,chx,x->cb", d.coaction.rho_one, d.act, d.C.counit)
    return lhs, rhs


def check_normalized(d: DoiHopfDatum, g: Tensor) -> bool:
    """gamma(c_(1))(c_(2)) = eps_C(c.1_(-1)) 1_(0) for all basis c."""
    lhs, rhs = _normalization_sides(d, g)
    return lhs == rhs


def normalized_elements(V: V4Space) -> AffineSpace:
    """Normalized elements of V4, in V4 coordinates."""
    d = V.datum
    if V.space.dim == 0:
        _, rhs = _normalization_sides(d, Tensor.zeros(d.field, V.shape))
        empty = not rhs.is_zero()
        return AffineSpace(None if empty else Tensor.zeros(d.field, (0,)), Subspace.zero(d.field, 0))
    op = linear_operator(lambda t: _normalization_sides(d, ein("k,kx->x", t, V.space.basis).reshape(*V.shape))[0],
                         (V.space.dim,), d.field)
    _, rhs = _normalization_sides(d, Tensor.zeros(d.field, V.shape))
    return solve_linear_system([op], [rhs], allow_empty=True)


# ---------------------------------------------------------------------------
# V0 and f


@dataclass(frozen=True, eq=False)
class ExampleV0:
    """V0 inside ``host`` with f as a matrix [host, flattened g] and the embedding of H^ (or K^)."""

    which: str
    host: Algebra
    space: Subspace
    f: Tensor
    dual_embed: Tensor | None  # [host, f]: the element phi of H^ inside the host algebra
    r: Tensor | None


def _ex1(d: DoiHopfDatum) -> ExampleV0:
    H = d.H
    one = H.HL.coords(H.unit)
    f = ein("c,d,ak->kcda", one, one, Tensor.eye(d.field, d.A.dim)).reshape(H.dim, -1)
    return ExampleV0("ex1", H.algebra, H.algebra.center(), f, None, None)


def _ex2(d: DoiHopfDatum, r: Tensor) -> ExampleV0:
    H = d.H
    Hh = H.dual()
    eps_A = ein("ik,k->i", H.HL.basis, H.counit)
    f = ein("c,dh,a->hcda", r, Tensor.eye(d.field, H.dim), eps_A).reshape(H.dim, -1)
    V0 = commutant(Hh.algebra, Hh.HR)
    return ExampleV0("ex2", Hh.algebra, V0, f, Tensor.eye(d.field, H.dim), r)


def _ex3(d: DoiHopfDatum, r: Tensor) -> ExampleV0:
    H = d.H
    n = H.dim
    W, Wsp, J = weyl_realization(H)
    Jw = Wsp.coords(J.T, axis=1).T.reshape(W.dim, n, n)  # [w, a, x]
    H_in = ein("wax,x->wa", Jw, H.counit)
    V0 = commutant(W, Subspace.span(H_in.T, W.dim))
    f = ein("c,wai->wcia", r, Jw).reshape(W.dim, -1)
    return ExampleV0("ex3", W, V0, f, ein("wax,a->wx", Jw, H.unit), r)


def _ex4(d: DoiHopfDatum, K: WeakHopfAlgebra, r: Tensor, rho: Tensor) -> ExampleV0:
    X, D = build_twisted_double(K)
    n = K.dim
    P = D.proj.matrix.reshape(-1, n, n)  # [u, a, f]: class of e_a (x) beta^f
    Da = ein("uaf,f->ua", P, K.counit)
    Dphi = ein("uaf,a->uf", P, K.unit)
    # psi_b = (S^-1(r) S^-2(e_b)) -> rho, so psi_b(e_f) = rho(e_f S^-1(r) S^-2(e_b))
    s_r = ein("xp,p->x", K.S_inv, r)
    Sinv2 = ein("xy,yz->xz", K.S_inv, K.S_inv)
    y = ein("x,qb,xqy->by", s_r, Sinv2, K.mult)
    psi = ein("fyk,by,k->bf", K.mult, y, rho)
    Dpsi = ein("vf,bf->vb", Dphi, psi)
    mX = X.mult

    def residual(u):
        # u D(b) - D(b_(1)) u D(psi_(b_(2))), products in X
        left = ein("i,jb,ijw->bw", u, Da, mX)
        right = ein("bpq,ip,j,ijz,vq,zvw->bw", K.comult, Da, u, mX, Dpsi, mX)
        return left - right

    V0 = solve_homogeneous(residual, (X.dim,), d.field)
    f = ein("c,uai->ucia", r, P).reshape(X.dim, -1)
    return ExampleV0("ex4", X, V0, f, Dphi, r)


def example_v0(d: DoiHopfDatum, which: str, K: WeakHopfAlgebra | None = None,
               convention: str = "primary") -> tuple[ExampleV0, Tensor | None]:
    """V0, f and the dual right integral (None for ex1) for the standard example ``which``."""
    _require(d)
    if which == "ex1":
        return _ex1(d), None
    if which in ("ex2", "ex3"):
        H = d.H
        r = nondegenerate_integral(H)
        rho = dual_right_integral(H, r, convention)
        return (_ex2(d, r) if which == "ex2" else _ex3(d, r)), rho
    if which == "ex4":
        if K is None or not ex4_host(K).same(d.H):
            raise ValueError("ex4 needs K with d built from K")
        r = nondegenerate_integral(K)
        rho = dual_right_integral(K, r, convention)
        return _ex4(d, K, r, rho), rho
    raise ValueError(f"unknown example {which!r}")


def v0_space(d: DoiHopfDatum, which: str, K: WeakHopfAlgebra | None = None) -> Subspace:
    return example_v0(d, which, K)[0].space


def v0_iso(V: V4Space, ex: ExampleV0) -> LinMap:
    """f : V4 -> V0 in the two coordinate systems; raises NotBijective when it is not."""
    F = ein("hx,kx->kh", ex.f, V.space.basis)  # [k, host]
    M = LinMap(ex.space.coords(F, axis=1).T) if V.space.dim else LinMap.zero(V.datum.field, ex.space.dim, 0)
    if not M.is_bijective():
        raise NotBijective(f"{ex.which}: f has rank {M.rank()} from dim {V.space.dim} to dim {ex.space.dim}")
    return M


def normalization_lhs(ex: ExampleV0, Hh: WeakHopfAlgebra, rho: Tensor, xi: Tensor) -> Tensor:
    """S^-1(rho_(2)) xi rho_(1) in the host algebra."""
    E, m = ex.dual_embed, ex.host.mult
    return ein("f,fpq,sq,hs,i,hiz,kp,zkw->w", rho, Hh.comult, Hh.S_inv, E, xi, m, E, m)


def _dual_host(d: DoiHopfDatum, ex: ExampleV0, K: WeakHopfAlgebra | None) -> WeakHopfAlgebra:
    return (K if ex.which == "ex4" else d.H).dual()


def check_normalization_equations(d: DoiHopfDatum, which: str, candidate: Tensor, K: WeakHopfAlgebra | None = None,
                                  convention: str = "primary") -> bool:
    """The displayed normalization equation for ``candidate`` (host coordinates); ex1 asks for the unit."""
    ex, rho = example_v0(d, which, K, convention)
    if which == "ex1":
        return candidate == ex.host.unit
    return normalization_lhs(ex, _dual_host(d, ex, K), rho, candidate) == ex.host.unit


def normalized_v0(ex: ExampleV0, Hh: WeakHopfAlgebra | None, rho: Tensor | None) -> AffineSpace:
    """Elements of V0 satisfying the normalization equation, in V0 coordinates."""
    field = ex.host.field
    B = ex.space.basis
    if ex.space.dim == 0:
        ok = ex.host.unit.is_zero()
        return AffineSpace(Tensor.zeros(field, (0,)) if ok else None, Subspace.zero(field, 0))
    if ex.which == "ex1":
        op = B.T
    else:
        op = linear_operator(lambda t: normalization_lhs(ex, Hh, rho, ein("k,kx->x", t, B)), (ex.space.dim,), field)
    return solve_linear_system([op], [ex.host.unit], allow_empty=True)


def _affine_image(f: LinMap, A: AffineSpace) -> AffineSpace:
    hom = A.homogeneous
    if hom.dim:
        img = Subspace.span(ein("ij,kj->ki", f.matrix, hom.basis), f.codomain_dim)
    else:
        img = Subspace.zero(f.field, f.codomain_dim)
    return AffineSpace(None if A.particular is None else f(A.particular), img)


def example_report(d: DoiHopfDatum, which: str, K: WeakHopfAlgebra | None = None,
                   convention: str = "primary") -> Report:
    r = Report(f"integrals ({which})")
    V = compute_V4(d)
    r.expect("v4.substitution", "every V4 basis element satisfies both defining conditions",
             all(t.is_zero() for i in range(V.space.dim) for t in v4_residual(d, V.element(i))))
    r.info("v4.dim", "dim V4", str(V.space.dim))
    ex, rho = example_v0(d, which, K, convention)
    r.info("v0.dim", "dim V0", str(ex.space.dim))
    if rho is not None:
        r.info("convention", "dual right integral normalization", convention)
    F = ein("hx,kx->kh", ex.f, V.space.basis)
    into = all(ex.space.contains(F[k]) for k in range(V.space.dim))
    r.expect("f.into_v0", "f maps V4 into V0", into)
    if not into:
        return r
    try:
        f = v0_iso(V, ex)
        r.expect("f.bijective", "f : V4 -> V0 is bijective", True)
    except NotBijective as exc:
        r.expect("f.bijective", "f : V4 -> V0 is bijective", False, str(exc))
        return r
    N4 = normalized_elements(V)
    N0 = normalized_v0(ex, None if rho is None else _dual_host(d, ex, K), rho)
    r.info("normalized.v4", "normalized elements of V4",
           "none" if N4.is_empty else f"affine of dim {N4.homogeneous.dim}")
    r.info("normalized.v0", "solutions of the normalization equation in V0",
           "none" if N0.is_empty else f"affine of dim {N0.homogeneous.dim}")
    r.expect("normalized.correspond", "f(normalized V4) = normalized V0", _affine_image(f, N4) == N0)
    if which == "ex1":
        r.expect("normalized.unique", "exactly one normalized element, and f of it is 1",
                 N4.is_unique and ex.space.coords(ex.host.unit) == f(N4.particular))
    return r


def pin_convention(d: DoiHopfDatum) -> tuple[str, dict[str, bool]]:
    """Evaluate both dual-integral conventions on the ex2 suite; prefer the primary one when both pass."""
    results = {}
    for conv in CONVENTIONS:
        try:
            results[conv] = example_report(d, "ex2", convention=conv).passed
        except NoDualIntegral:
            results[conv] = False
    chosen = next((c for c in CONVENTIONS if results[c]), "primary")
    return chosen, results


def left_integral_comparison(H: WeakHopfAlgebra) -> Report:
    """dim V0 (ex2) against left integrals of H^, and g(l) = S^(l <- r) landing in H^^L; reported, not asserted."""
    r = Report("left integrals of the dual")
    Hh = H.dual()
    IL = integral_space(Hh, "left").space
    V0 = commutant(Hh.algebra, Hh.HR)
    rr = nondegenerate_integral(H)
    r.info("dims", "dim V0 vs dim of left integrals in H^", f"{V0.dim} vs {IL.dim}")
    if IL.dim:
        # (l <- r)(x) = l(r x)
        lr = ein("kf,ixf,i->kx", IL.basis, H.mult, rr)
        g = ein("yx,kx->ky", Hh.antipode, lr)
        img = Subspace.span(g, H.dim)
        r.info("g.image", "image of g equals H^^L", str(img == Hh.HL))
        r.info("g.injective", "g is injective", str(img.dim == IL.dim))
    return r


__all__ = [
    "CONVENTIONS",
    "ExampleV0",
    "IntegralSpace",
    "V4Space",
    "check_normalization_equations",
    "check_normalized",
    "compute_V4",
    "dual_right_integral",
    "example_report",
    "example_v0",
    "hit_integral_matrix",
    "integral_space",
    "is_integral",
    "is_nondegenerate_integral",
    "left_integral_comparison",
    "nondegenerate_integral",
    "normalization_lhs",
    "normalized_elements",
    "normalized_v0",
    "pin_convention",
    "v0_iso",
    "v0_space",
    "v4_residual",
]
