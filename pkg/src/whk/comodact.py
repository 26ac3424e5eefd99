"""Weak coactions on algebras and weak actions on coalgebras.

Index conventions:

* a coaction is stored as ``rho[a, h, b]`` for both sides; on the left
  ``rho(e_a) = sum rho[a, h, b] e_h (x) e_b`` and on the right
  ``rho(e_a) = sum rho[a, h, b] e_b (x) e_h``;
* an action is stored as ``act[c, h, d]`` for both sides: ``c . e_h`` (right)
  or ``e_h . c`` (left) equals ``sum_d act[c, h, d] e_d``.

As linear maps into a product space the H factor is the major index for
left coactions and the A factor is major for right ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .errors import DimMismatch, FieldMismatch, NotInSubspace, NotInvariant
from .hopfcore import Algebra, Coalgebra, WeakBialgebra, subalgebra
from .kernel import LinMap, Subspace, Tensor, ein
from .report import Report

Side = Literal["left", "right"]


def _check_side(side: str) -> None:
    if side not in ("left", "right"):
        raise ValueError(f"side must be 'left' or 'right', got {side!r}")


@dataclass(frozen=True, eq=False)
class WeakCoaction:
    side: Side
    H: WeakBialgebra
    A: Algebra
    rho: Tensor

    def __post_init__(self):
        _check_side(self.side)
        if self.H.field != self.A.field or self.rho.field != self.H.field:
            raise FieldMismatch("coaction components over different fields")
        want = (self.A.dim, self.H.dim, self.A.dim)
        if self.rho.shape != want:
            raise DimMismatch(f"rho has shape {self.rho.shape}, expected {want}")

    @property
    def rho_one(self) -> Tensor:
        """``R1[h, b]``: the components of rho(1_A)."""
        return ein("a,ahb->hb", self.A.unit, self.rho)

    def as_linmap(self) -> LinMap:
        nA, nH = self.A.dim, self.H.dim
        if self.side == "left":
            return LinMap(self.rho.transpose(1, 2, 0).reshape(nH * nA, nA))
        return LinMap(self.rho.transpose(2, 1, 0).reshape(nA * nH, nA))

    @classmethod
    def from_linmap(cls, side: Side, H: WeakBialgebra, A: Algebra, f: LinMap) -> WeakCoaction:
        nA, nH = A.dim, H.dim
        m = f.matrix
        if side == "left":
            rho = m.reshape(nH, nA, nA).transpose(2, 0, 1)
        else:
            rho = m.reshape(nA, nH, nA).transpose(2, 1, 0)
        return cls(side, H, A, rho)

    def same(self, other: WeakCoaction) -> bool:
        return self.side == other.side and self.H.same(other.H) and self.A.same(other.A) and self.rho == other.rho


@dataclass(frozen=True, eq=False)
class WeakAction:
    side: Side
    H: WeakBialgebra
    C: Coalgebra
    act: Tensor

    def __post_init__(self):
        _check_side(self.side)
        if self.H.field != self.C.field or self.act.field != self.H.field:
            raise FieldMismatch("action components over different fields")
        want = (self.C.dim, self.H.dim, self.C.dim)
        if self.act.shape != want:
            raise DimMismatch(f"act has shape {self.act.shape}, expected {want}")

    def same(self, other: WeakAction) -> bool:
        return self.side == other.side and self.H.same(other.H) and self.C.same(other.C) and self.act == other.act


def _dims(x) -> None:
    if isinstance(x, WeakCoaction):
        if x.rho.shape != (x.A.dim, x.H.dim, x.A.dim):
            raise DimMismatch("coaction dimensions inconsistent")
    elif x.act.shape != (x.C.dim, x.H.dim, x.C.dim):
        raise DimMismatch("action dimensions inconsistent")


def check_comodule_algebra(x: WeakCoaction) -> Report:
    _dims(x)
    H, A, rho = x.H, x.A, x.rho
    mA, mH, d = A.mult, H.mult, H.comult
    R1 = x.rho_one
    r = Report(f"{x.side} comodule algebra")
    if x.side == "left":
        r.expect_equal(
            "a1", "(id x rho)rho = (D x id)rho",
            ein("ahb,bgc->ahgc", rho, rho), ein("akc,khg->ahgc", rho, d), ("a", "h1", "h2", "out"),
        )
        r.expect_equal(
            "a2", "(1 x a)rho(1) = (Pi^R x id)rho(a)",
            ein("hb,abk->ahk", R1, mA), ein("ahk,xh->axk", rho, H.pi_R.matrix), ("a", "h", "out"),
        )
    else:
        r.expect_equal(
            "a1", "(rho x id)rho = (id x D)rho",
            ein("ahb,bgc->acgh", rho, rho), ein("akc,kgh->acgh", rho, d), ("a", "out", "h1", "h2"),
        )
        r.expect_equal(
            "a2", "rho(1)(a x 1) = (id x Pi^L)rho(a)",
            ein("hb,bak->akh", R1, mA), ein("ahc,xh->acx", rho, H.pi_L.matrix), ("a", "out", "h"),
        )
    r.expect_equal(
        "a3", "rho(ab) = rho(a)rho(b)",
        ein("abx,xhk->abhk", mA, rho), ein("apx,bqy,pqh,xyk->abhk", rho, rho, mH, mA), ("a", "b", "h", "out"),
    )
    return r


def check_module_coalgebra(x: WeakAction) -> Report:
    _dims(x)
    H, C, act = x.H, x.C, x.act
    dC, eC, d, mH = C.comult, C.counit, H.comult, H.mult
    r = Report(f"{x.side} module coalgebra")
    if x.side == "right":
        r.expect_equal(
            "c1", "(c.g).h = c.(gh)",
            ein("cgx,xhy->cghy", act, act), ein("ghk,cky->cghy", mH, act), ("c", "g", "h", "out"),
        )
        r.expect_equal(
            "c2", "c.Pi^L(h) = eps_C(c1.h) c2",
            ein("xh,cxy->chy", H.pi_L.matrix, act), ein("cab,ahx,x->chb", dC, act, eC), ("c", "h", "out"),
        )
    else:
        r.expect_equal(
            "c1", "g.(h.c) = (gh).c",
            ein("chx,xgy->cghy", act, act), ein("ghk,cky->cghy", mH, act), ("c", "g", "h", "out"),
        )
        r.expect_equal(
            "c2", "Pi^R(h).c = c1 eps_C(h.c2)",
            ein("xh,cxy->chy", H.pi_R.matrix, act), ein("cab,bhx,x->cha", dC, act, eC), ("c", "h", "out"),
        )
    r.expect_equal(
        "c3", "D_C(c.h) = D_C(c).D(h)",
        ein("chx,xab->chab", act, dC), ein("cxy,hgk,xga,ykb->chab", dC, d, act, act), ("c", "h", "1", "2"),
    )
    return r


def is_nondegenerate(x: WeakCoaction | WeakAction) -> bool:
    if isinstance(x, WeakCoaction):
        return ein("ahb,h->ab", x.rho, x.H.counit) == Tensor.eye(x.H.field, x.A.dim)
    return ein("chx,h->cx", x.act, x.H.unit) == Tensor.eye(x.H.field, x.C.dim)


def check_nondegenerate(x: WeakCoaction | WeakAction) -> Report:
    """Defining condition, its unit-only equivalent, and (when they hold) the reformulated axiom (b)."""
    _dims(x)
    H = x.H
    r = Report(f"{x.side} non-degeneracy")
    if isinstance(x, WeakCoaction):
        I = Tensor.eye(H.field, x.A.dim)
        defining = r.expect_equal("nondegenerate", "(eps x id)rho = id", ein("ahb,h->ab", x.rho, H.counit), I)
        alt = r.expect_equal(
            "nondegenerate.unit_form", "(eps x id)rho(1) = 1", ein("hb,h->b", x.rho_one, H.counit), x.A.unit
        )
        r.expect("nondegenerate.forms_agree", "the two non-degeneracy forms agree", defining == alt,
                 {"defining": defining, "unit_form": alt})
        if defining:
            R1, d, D1, mH = x.rho_one, H.comult, H.delta_one, H.mult
            if x.side == "left":
                r.expect_equal(
                    "a2.equivalent", "(D x id)rho(1) = (1 x rho(1))(D(1) x 1)",
                    ein("hb,hxy->xyb", R1, d), ein("hb,xy,hyk->xkb", R1, D1, mH),
                )
            else:
                r.expect_equal(
                    "a2.equivalent", "(id x D)rho(1) = (1 x D(1))(rho(1) x 1)",
                    ein("kc,kxy->cxy", R1, d), ein("xy,hc,xhk->cky", D1, R1, mH),
                )
    else:
        act, eC = x.act, x.C.counit
        I = Tensor.eye(H.field, x.C.dim)
        defining = r.expect_equal("nondegenerate", "1 acts as identity", ein("chx,h->cx", act, H.unit), I)
        alt = r.expect_equal(
            "nondegenerate.counit_form", "eps_C(1 acting on c) = eps_C(c)", ein("chx,h,x->c", act, H.unit, eC), eC
        )
        r.expect("nondegenerate.forms_agree", "the two non-degeneracy forms agree", defining == alt,
                 {"defining": defining, "counit_form": alt})
        if defining:
            P = H.pi_L.matrix if x.side == "right" else H.pi_R.matrix
            label = "eps_C(c.h) = eps_C(c.Pi^L(h))" if x.side == "right" else "eps_C(h.c) = eps_C(Pi^R(h).c)"
            r.expect_equal("c2.equivalent", label, ein("chx,x->ch", act, eC), ein("xh,cxy,y->ch", P, act, eC))
    return r


def restrict_coaction_to_subalgebra(x: WeakCoaction, B: Subspace) -> WeakCoaction:
    """Rebase a coaction onto an invariant unital subalgebra ``B`` of ``A``."""
    sub = subalgebra(x.A, B)
    images = ein("ia,ahb->ihb", B.basis, x.rho)
    try:
        rho = B.coords(images, axis=2)
    except NotInSubspace as exc:
        raise NotInvariant("coaction does not preserve the subalgebra") from exc
    return WeakCoaction(x.side, x.H, sub, rho)
