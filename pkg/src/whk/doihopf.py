"""Weak Doi-Hopf data, their duals, Doi-Hopf modules and morphisms.

A right datum pairs a left coaction of H on A with a right action of H on C;
a left datum pairs a right coaction with a left action.  A module over a
right datum is a right A-module with a left C-coaction, stored as
``act[m, a, m']`` and ``rho[m, c, m']`` (the comodule convention of
:mod:`whk.comodact`); modules over left data use the mirrored reading.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .comodact import (
    WeakAction,
    WeakCoaction,
    check_comodule_algebra,
    check_module_coalgebra,
    check_nondegenerate,
    is_nondegenerate,
)
from .errors import AxiomFailure, DatumMismatch, DimMismatch
from .hopfcore import Algebra, Coalgebra, WeakBialgebra, _hat
from .kernel import LinMap, Subspace, Tensor, concat, ein, solve_homogeneous
from .report import Report

_COACTION_SIDE = {"right": "left", "left": "right"}


@dataclass(frozen=True, eq=False)
class DoiHopfDatum:
    side: str
    coaction: WeakCoaction
    action: WeakAction

    @property
    def H(self) -> WeakBialgebra:
        return self.coaction.H

    @property
    def A(self) -> Algebra:
        return self.coaction.A

    @property
    def C(self) -> Coalgebra:
        return self.action.C

    @property
    def rho(self) -> Tensor:
        return self.coaction.rho

    @property
    def act(self) -> Tensor:
        return self.action.act

    @property
    def field(self):
        return self.H.field

    @cached_property
    def nondegenerate(self) -> bool:
        return is_nondegenerate(self.coaction) and is_nondegenerate(self.action)

    def same(self, other: DoiHopfDatum) -> bool:
        return self.side == other.side and self.coaction.same(other.coaction) and self.action.same(other.action)

    def dual(self) -> DoiHopfDatum:
        return dual_datum(self)


def check_datum(d: DoiHopfDatum) -> Report:
    r = Report(f"{d.side} Doi-Hopf datum")
    r.expect("sides", "coaction/action sides match the datum side",
             d.coaction.side == _COACTION_SIDE[d.side] and d.action.side == d.side,
             {"coaction": d.coaction.side, "action": d.action.side})
    r.expect("same_H", "coaction and action share H", d.coaction.H.same(d.action.H))
    r.extend(check_comodule_algebra(d.coaction), "coaction.")
    r.extend(check_module_coalgebra(d.action), "action.")
    nd_co = check_nondegenerate(d.coaction)
    nd_act = check_nondegenerate(d.action)
    r.expect("coaction.nondegenerate.forms_agree", "two forms agree", nd_co.get("nondegenerate.forms_agree").passed)
    r.expect("action.nondegenerate.forms_agree", "two forms agree", nd_act.get("nondegenerate.forms_agree").passed)
    for rep, prefix in ((nd_co, "coaction."), (nd_act, "action.")):
        for c in rep.checks:
            if c.id.endswith(".equivalent"):
                r.checks.append(c.__class__(prefix + c.id, c.anchor, c.passed, c.witness, c.seconds))
    r.info("nondegenerate", "both structures non-degenerate", str(d.nondegenerate))
    return r


def build_datum(H: WeakBialgebra, coaction: WeakCoaction, action: WeakAction, side: str) -> DoiHopfDatum:
    if side not in _COACTION_SIDE:
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")
    if not (coaction.H.same(H) and action.H.same(H)):
        raise DatumMismatch("coaction/action are over a different H")
    d = DoiHopfDatum(side, coaction, action)
    check_datum(d).raise_if_failed(AxiomFailure)
    return d


def dual_datum(d: DoiHopfDatum) -> DoiHopfDatum:
    """The dual datum (H^, C^, A^); a right datum becomes a left one and vice versa."""
    Hh = d.H.dual()
    C, A = d.C, d.A
    Ch = Algebra(C.field, C.comult.transpose(1, 2, 0), C.counit, _hat(C.names))
    Ah = Coalgebra(A.field, A.mult.transpose(2, 0, 1), A.unit, _hat(A.names))
    new_side = "left" if d.side == "right" else "right"
    coaction = WeakCoaction(_COACTION_SIDE[new_side], Hh, Ch, d.act.transpose(2, 1, 0))
    action = WeakAction(new_side, Hh, Ah, d.rho.transpose(2, 1, 0))
    return DoiHopfDatum(new_side, coaction, action)


# ---------------------------------------------------------------------------
# modules


@dataclass(frozen=True, eq=False)
class DoiHopfModule:
    datum: DoiHopfDatum
    act: Tensor
    rho: Tensor

    def __post_init__(self):
        m = self.act.shape[0] if self.act.ndim == 3 else -1
        if self.act.shape != (m, self.datum.A.dim, m):
            raise DimMismatch(f"module action shape {self.act.shape}")
        if self.rho.shape != (m, self.datum.C.dim, m):
            raise DimMismatch(f"module coaction shape {self.rho.shape}")

    @property
    def dim(self) -> int:
        return self.act.shape[0]

    @property
    def side(self) -> str:
        return self.datum.side

    def same(self, other: DoiHopfModule) -> bool:
        return self.act == other.act and self.rho == other.rho

    def transport(self, P: Tensor, Pinv: Tensor) -> DoiHopfModule:
        """Change of basis: ``P`` sends old coordinates to new ones, ``Pinv`` back."""
        act = ein("xm,xay,ny->man", Pinv, self.act, P)
        rho = ein("xm,xcy,ny->mcn", Pinv, self.rho, P)
        return DoiHopfModule(self.datum, act, rho)


def zero_module(d: DoiHopfDatum) -> DoiHopfModule:
    f = d.field
    return DoiHopfModule(d, Tensor.zeros(f, (0, d.A.dim, 0)), Tensor.zeros(f, (0, d.C.dim, 0)))


def check_module(M: DoiHopfModule) -> Report:
    d = M.datum
    mA, uA, dC, eC = d.A.mult, d.A.unit, d.C.comult, d.C.counit
    act, rho = M.act, M.rho
    I = Tensor.eye(d.field, M.dim)
    r = Report(f"{d.side} Doi-Hopf module")
    if d.side == "right":
        r.expect_equal("module.associative", "(m.a).b = m.(ab)",
                       ein("max,xby->maby", act, act), ein("abk,mky->maby", mA, act), ("m", "a", "b", "out"))
        r.expect_equal("comodule.coassociative", "(id x rho)rho = (D_C x id)rho",
                       ein("mcx,xdy->mcdy", rho, rho), ein("mky,kcd->mcdy", rho, dC), ("m", "c", "d", "out"))
        r.expect_equal(
            "compatibility", "rho(m.a) = m_(-1).a_(-1) x m_(0).a_(0)",
            ein("max,xcy->macy", act, rho),
            ein("mpx,ahb,phc,xby->macy", rho, d.rho, d.act, act),
            ("m", "a", "c", "out"),
        )
    else:
        r.expect_equal("module.associative", "a.(b.m) = (ab).m",
                       ein("mbx,xay->maby", act, act), ein("abk,mky->maby", mA, act), ("m", "a", "b", "out"))
        r.expect_equal("comodule.coassociative", "(rho x id)rho = (id x D_C)rho",
                       ein("mcx,xdy->mydc", rho, rho), ein("mky,kdc->mydc", rho, dC), ("m", "out", "d", "c"))
        r.expect_equal(
            "compatibility", "rho(a.m) = a_(0).m_(0) x a_(1).m_(1)",
            ein("max,xcy->macy", act, rho),
            ein("ahb,mpx,xby,phc->macy", d.rho, rho, act, d.act),
            ("m", "a", "c", "out"),
        )
    r.expect_equal("module.unital", "1_A acts as identity", ein("max,a->mx", act, uA), I)
    r.expect_equal("comodule.counit", "(eps_C x id)rho = id", ein("mcx,c->mx", rho, eC), I)
    return r


def check_morphism(T: LinMap, source: DoiHopfModule, target: DoiHopfModule) -> Report:
    if not source.datum.same(target.datum):
        raise DatumMismatch("modules over different data")
    if T.matrix.shape != (target.dim, source.dim):
        raise DimMismatch(f"map shape {T.matrix.shape} vs ({target.dim}, {source.dim})")
    M = T.matrix
    r = Report("Doi-Hopf morphism")
    r.expect_equal("intertwines.action", "T(m.a) = T(m).a",
                   ein("max,yx->may", source.act, M), ein("xm,xay->may", M, target.act), ("m", "a", "out"))
    r.expect_equal("intertwines.coaction", "rho' T = (id x T) rho",
                   ein("xm,xcy->mcy", M, target.rho), ein("mcx,yx->mcy", source.rho, M), ("m", "c", "out"))
    return r


def _morphism_residual(source: DoiHopfModule, target: DoiHopfModule):
    def residual(M: Tensor):
        return [
            ein("max,yx->may", source.act, M) - ein("xm,xay->may", M, target.act),
            ein("xm,xcy->mcy", M, target.rho) - ein("mcx,yx->mcy", source.rho, M),
        ]

    return residual


def hom_space(source: DoiHopfModule, target: DoiHopfModule) -> Subspace:
    """Morphisms source -> target as a subspace of flattened [target, source] matrices."""
    if not source.datum.same(target.datum):
        raise DatumMismatch("modules over different data")
    return solve_homogeneous(_morphism_residual(source, target), (target.dim, source.dim), source.datum.field)


def hom_basis(source: DoiHopfModule, target: DoiHopfModule) -> list[LinMap]:
    sp = hom_space(source, target)
    return [LinMap(sp.basis[i].reshape(target.dim, source.dim)) for i in range(sp.dim)]


def dualize_module(M: DoiHopfModule, dual: DoiHopfDatum | None = None) -> DoiHopfModule:
    """The dual module over the dual datum: action from the coaction and vice versa."""
    dual = dual or dual_datum(M.datum)
    return DoiHopfModule(dual, M.rho.transpose(2, 1, 0), M.act.transpose(2, 1, 0))


def dualize_morphism(T: LinMap) -> LinMap:
    return LinMap(T.matrix.T)


def submodule(M: DoiHopfModule, N: Subspace) -> DoiHopfModule:
    """Restriction to a subspace invariant under both structures."""
    act = N.coords(ein("im,max->iax", N.basis, M.act), axis=2)
    rho = N.coords(ein("im,mcx->icx", N.basis, M.rho), axis=2)
    return DoiHopfModule(M.datum, act, rho)


def generated_submodule(M: DoiHopfModule, v: Tensor) -> Subspace:
    """Smallest subspace containing ``v`` and stable under the action and coaction."""
    ops = [M.act[:, a, :].T for a in range(M.datum.A.dim)] + [M.rho[:, c, :].T for c in range(M.datum.C.dim)]
    span = Subspace.span(v, M.dim)
    while True:
        images = [ein("om,km->ko", op, span.basis) for op in ops]
        bigger = Subspace.span(concat([span.basis, *images]), M.dim)
        if bigger.dim == span.dim:
            return span
        span = bigger
