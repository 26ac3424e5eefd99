"""Algebras, coalgebras, weak bialgebras and weak Hopf algebras by structure constants.

Conventions (used throughout the package):

* ``mult[i, j, k]``: ``e_i e_j = sum_k mult[i, j, k] e_k``
* ``comult[i, j, k]``: ``Delta(e_i) = sum_{j,k} comult[i, j, k] e_j (x) e_k``
* ``unit``/``counit`` are vectors; ``antipode[k, i]`` is the coefficient of
  ``e_k`` in ``S(e_i)`` (matrices are always ``[codomain, domain]``)
* tensor products of based spaces use Kronecker order ``i1 * n2 + i2``
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import cached_property

from .errors import AntipodeNotInvertible, AxiomFailure, DimMismatch, FieldMismatch, NotASubalgebra, SingularMatrix
from .kernel import Field, LinMap, Subspace, Tensor, ein, image_of, inverse, kernel_of, solve_homogeneous
from .report import Report


def _names(prefix: str, n: int) -> tuple[str, ...]:
    return tuple(f"{prefix}{i}" for i in range(n))


@dataclass(frozen=True, eq=False)
class Algebra:
    field: Field
    mult: Tensor
    unit: Tensor
    names: tuple[str, ...] = ()

    def __post_init__(self):
        n = self.unit.shape[0]
        if self.mult.shape != (n, n, n):
            raise DimMismatch(f"mult shape {self.mult.shape} vs unit length {n}")
        if not self.names:
            object.__setattr__(self, "names", _names("a", n))

    @property
    def dim(self) -> int:
        return self.unit.shape[0]

    def mul(self, x: Tensor, y: Tensor) -> Tensor:
        return ein("i,j,ijk->k", x, y, self.mult)

    def same(self, other: Algebra) -> bool:
        return self.mult == other.mult and self.unit == other.unit

    def opposite(self) -> Algebra:
        return Algebra(self.field, self.mult.transpose(1, 0, 2), self.unit, self.names)

    def left_regular(self) -> Tensor:
        """``L[k, j, i]``: coefficient of e_k in e_i e_j, i.e. matrices of left multiplication."""
        return self.mult.transpose(2, 1, 0)

    def center(self) -> Subspace:
        return commutant(self, Subspace.full(self.field, self.dim))


@dataclass(frozen=True, eq=False)
class Coalgebra:
    field: Field
    comult: Tensor
    counit: Tensor
    names: tuple[str, ...] = ()

    def __post_init__(self):
        n = self.counit.shape[0]
        if self.comult.shape != (n, n, n):
            raise DimMismatch(f"comult shape {self.comult.shape} vs counit length {n}")
        if not self.names:
            object.__setattr__(self, "names", _names("c", n))

    @property
    def dim(self) -> int:
        return self.counit.shape[0]

    def same(self, other: Coalgebra) -> bool:
        return self.comult == other.comult and self.counit == other.counit

    def dual_algebra(self) -> Algebra:
        return Algebra(self.field, self.comult.transpose(1, 2, 0), self.counit, _hat(self.names))


def _hat(names) -> tuple[str, ...]:
    return tuple(n[:-1] if n.endswith("^") else n + "^" for n in names)


def check_algebra(A: Algebra) -> Report:
    r = Report("algebra")
    m, u = A.mult, A.unit
    I = Tensor.eye(A.field, A.dim)
    r.expect_equal("associativity", "(xy)z = x(yz)", ein("ijx,xkl->ijkl", m, m), ein("jky,iyl->ijkl", m, m), ("x", "y", "z", "out"))
    r.expect_equal("unit.left", "1x = x", ein("i,ijk->jk", u, m), I, ("x", "out"))
    r.expect_equal("unit.right", "x1 = x", ein("j,ijk->ik", u, m), I, ("x", "out"))
    return r


def check_coalgebra(C: Coalgebra) -> Report:
    r = Report("coalgebra")
    d, e = C.comult, C.counit
    I = Tensor.eye(C.field, C.dim)
    r.expect_equal("coassociativity", "(D x id)D = (id x D)D", ein("ixc,xab->iabc", d, d), ein("iay,ybc->iabc", d, d), ("c", "1", "2", "3"))
    r.expect_equal("counit.left", "(eps x id)D = id", ein("ijk,j->ik", d, e), I, ("c", "out"))
    r.expect_equal("counit.right", "(id x eps)D = id", ein("ijk,k->ij", d, e), I, ("c", "out"))
    return r


@dataclass(frozen=True, eq=False)
class WeakBialgebra:
    field: Field
    mult: Tensor
    unit: Tensor
    comult: Tensor
    counit: Tensor
    names: tuple[str, ...] = ()

    def __post_init__(self):
        n = self.unit.shape[0]
        for name, t, shape in (
            ("mult", self.mult, (n, n, n)),
            ("comult", self.comult, (n, n, n)),
            ("counit", self.counit, (n,)),
        ):
            if t.shape != shape:
                raise DimMismatch(f"{name} has shape {t.shape}, expected {shape}")
            if t.field != self.field:
                raise FieldMismatch(f"{name} over {t.field}, expected {self.field}")
        if not self.names:
            object.__setattr__(self, "names", _names("h", n))

    @property
    def dim(self) -> int:
        return self.unit.shape[0]

    @property
    def algebra(self) -> Algebra:
        return Algebra(self.field, self.mult, self.unit, self.names)

    @property
    def coalgebra(self) -> Coalgebra:
        return Coalgebra(self.field, self.comult, self.counit, self.names)

    def same(self, other: WeakBialgebra) -> bool:
        return (
            self.field == other.field
            and self.mult == other.mult
            and self.unit == other.unit
            and self.comult == other.comult
            and self.counit == other.counit
        )

    # elements ------------------------------------------------------------

    def basis_vector(self, i: int) -> Tensor:
        return Tensor.unit_vector(self.field, self.dim, i)

    def mul(self, x: Tensor, y: Tensor) -> Tensor:
        return ein("i,j,ijk->k", x, y, self.mult)

    def coproduct(self, x: Tensor) -> Tensor:
        return ein("i,ijk->jk", x, self.comult)

    def eps(self, x: Tensor):
        return ein("i,i->", x, self.counit).item()

    # canonical tensors ------------------------------------------------------

    @cached_property
    def delta_one(self) -> Tensor:
        """``D1[x, y]``: Delta(1) = sum D1[x, y] e_x (x) e_y."""
        return ein("k,kab->ab", self.unit, self.comult)

    @cached_property
    def eps_pair(self) -> Tensor:
        """``E[a, b] = eps(e_a e_b)``."""
        return ein("abk,k->ab", self.mult, self.counit)

    @cached_property
    def pi_L(self) -> LinMap:
        return LinMap(ein("xy,xh->yh", self.delta_one, self.eps_pair))

    @cached_property
    def pi_R(self) -> LinMap:
        return LinMap(ein("xy,hy->xh", self.delta_one, self.eps_pair))

    @cached_property
    def HL(self) -> Subspace:
        return image_of(self.pi_L)

    @cached_property
    def HR(self) -> Subspace:
        return image_of(self.pi_R)

    # variants -------------------------------------------------------------

    def dual(self) -> WeakBialgebra:
        return WeakBialgebra(
            self.field,
            self.comult.transpose(1, 2, 0),
            self.counit,
            self.mult.transpose(2, 0, 1),
            self.unit,
            _hat(self.names),
        )

    def op(self) -> WeakBialgebra:
        return replace(self, mult=self.mult.transpose(1, 0, 2))

    def cop(self) -> WeakBialgebra:
        return replace(self, comult=self.comult.transpose(0, 2, 1))

    def opcop(self) -> WeakBialgebra:
        return self.op().cop()

    def tensor(self, other: WeakBialgebra) -> WeakBialgebra:
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        n = self.dim * other.dim
        return WeakBialgebra(
            self.field,
            ein("ijk,abc->iajbkc", self.mult, other.mult).reshape(n, n, n),
            ein("i,a->ia", self.unit, other.unit).reshape(n),
            ein("ijk,abc->iajbkc", self.comult, other.comult).reshape(n, n, n),
            ein("i,a->ia", self.counit, other.counit).reshape(n),
            tuple(f"{x}*{y}" for x in self.names for y in other.names),
        )

    def validate(self) -> WeakBialgebra:
        check_wba(self).raise_if_failed(AxiomFailure)
        return self


@dataclass(frozen=True, eq=False)
class WeakHopfAlgebra(WeakBialgebra):
    antipode: Tensor | None = None

    def __post_init__(self):
        super().__post_init__()
        if self.antipode is None:
            raise ValueError("a weak Hopf algebra needs an antipode")
        if self.antipode.shape != (self.dim, self.dim):
            raise DimMismatch(f"antipode shape {self.antipode.shape}")

    @classmethod
    def from_wba(cls, H: WeakBialgebra, antipode: Tensor) -> WeakHopfAlgebra:
        return cls(H.field, H.mult, H.unit, H.comult, H.counit, H.names, antipode)

    @property
    def wba(self) -> WeakBialgebra:
        return WeakBialgebra(self.field, self.mult, self.unit, self.comult, self.counit, self.names)

    @property
    def S(self) -> LinMap:
        return LinMap(self.antipode)

    @cached_property
    def S_inv(self) -> Tensor:
        try:
            return inverse(self.antipode)
        except SingularMatrix as exc:
            raise AntipodeNotInvertible("antipode is singular") from exc

    @property
    def has_invertible_antipode(self) -> bool:
        try:
            self.S_inv
        except AntipodeNotInvertible:
            return False
        return True

    def same(self, other) -> bool:
        return super().same(other) and isinstance(other, WeakHopfAlgebra) and self.antipode == other.antipode

    def dual(self) -> WeakHopfAlgebra:
        return WeakHopfAlgebra.from_wba(self.wba.dual(), self.antipode.T)

    def op(self) -> WeakHopfAlgebra:
        return WeakHopfAlgebra.from_wba(self.wba.op(), self.S_inv)

    def cop(self) -> WeakHopfAlgebra:
        return WeakHopfAlgebra.from_wba(self.wba.cop(), self.S_inv)

    def opcop(self) -> WeakHopfAlgebra:
        return WeakHopfAlgebra.from_wba(self.wba.opcop(), self.antipode)

    def tensor(self, other: WeakBialgebra) -> WeakBialgebra:
        base = self.wba.tensor(other.wba if isinstance(other, WeakHopfAlgebra) else other)
        if not isinstance(other, WeakHopfAlgebra):
            return base
        S = ein("ki,ca->kcia", self.antipode, other.antipode).reshape(base.dim, base.dim)
        return WeakHopfAlgebra.from_wba(base, S)

    def validate(self) -> WeakHopfAlgebra:
        check_wha(self).raise_if_failed(AxiomFailure)
        return self


def op_cop_variants(H: WeakBialgebra) -> dict[str, WeakBialgebra]:
    return {"op": H.op(), "cop": H.cop(), "opcop": H.opcop()}


def tensor_wba(K1: WeakBialgebra, K2: WeakBialgebra) -> WeakBialgebra:
    return K1.tensor(K2)


def dual_wba(H: WeakBialgebra) -> WeakBialgebra:
    return H.dual()


def projections(H: WeakBialgebra) -> tuple[LinMap, LinMap]:
    return H.pi_L, H.pi_R


# ---------------------------------------------------------------------------
# axiom checks


def check_wba(H: WeakBialgebra) -> Report:
    if H.comult.shape[0] != H.mult.shape[0]:
        raise DimMismatch("algebra and coalgebra dimensions differ")
    r = Report("weak bialgebra")
    r.extend(check_algebra(H.algebra), "algebra.")
    r.extend(check_coalgebra(H.coalgebra), "coalgebra.")
    m, d, e = H.mult, H.comult, H.counit
    D1, E = H.delta_one, H.eps_pair
    r.expect_equal(
        "comult.multiplicative",
        "D(gh) = D(g)D(h)",
        ein("ghk,kxy->ghxy", m, d),
        ein("gab,hcd,acx,bdy->ghxy", d, d, m, m),
        ("g", "h", "1", "2"),
    )
    lhs = ein("zc,zab->abc", D1, d)
    r.expect_equal("weak_unit.first", "(D x id)D(1) = (D(1) x 1)(1 x D(1))", lhs, ein("ab,cd,bcy->ayd", D1, D1, m))
    r.expect_equal("weak_unit.second", "(D x id)D(1) = (1 x D(1))(D(1) x 1)", lhs, ein("ab,cd,ady->cyb", D1, D1, m))
    lhs = ein("abk,kcl,l->abc", m, m, e)
    r.expect_equal("weak_counit.first", "eps(xyz) = eps(x y1) eps(y2 z)", lhs, ein("aj,bjk,kc->abc", E, d, E), ("x", "y", "z"))
    r.expect_equal("weak_counit.second", "eps(xyz) = eps(x y2) eps(y1 z)", lhs, ein("ak,bjk,jc->abc", E, d, E), ("x", "y", "z"))
    if r.passed:
        PL, PR = H.pi_L.matrix, H.pi_R.matrix
        r.expect_equal("pi_L.idempotent", "Pi^L Pi^L = Pi^L", PL @ PL, PL)
        r.expect_equal("pi_R.idempotent", "Pi^R Pi^R = Pi^R", PR @ PR, PR)
        r.expect("base.dims", "dim H^L = dim H^R", H.HL.dim == H.HR.dim, {"HL": H.HL.dim, "HR": H.HR.dim})
        eps_mult = ein("abk,k->ab", m, e) == ein("a,b->ab", e, e)
        r.info("weakness", "eps multiplicative / D(1) = 1 x 1",
               f"counit multiplicative: {eps_mult}; Delta(1) = 1 (x) 1: {D1 == ein('a,b->ab', H.unit, H.unit)}")
    return r


def check_wha(H: WeakHopfAlgebra) -> Report:
    r = Report("weak Hopf algebra")
    r.extend(check_wba(H))
    if not r.passed:
        return r
    m, d, S = H.mult, H.comult, H.antipode
    r.expect_equal("antipode.left", "h1 S(h2) = Pi^L(h)", ein("hab,cb,ack->hk", d, S, m), H.pi_L.matrix.T, ("h", "out"))
    r.expect_equal("antipode.right", "S(h1) h2 = Pi^R(h)", ein("hab,ca,cbk->hk", d, S, m), H.pi_R.matrix.T, ("h", "out"))
    r.expect_equal(
        "antipode.sandwich",
        "S(h1) h2 S(h3) = S(h)",
        ein("hab,bcd,xa,xcy,zd,yzk->hk", d, d, S, m, S, m),
        S.T,
        ("h", "out"),
    )
    r.expect("antipode.invertible", "S bijective", H.has_invertible_antipode, {"rank_deficient": True})
    r.expect_equal(
        "antipode.anti_multiplicative",
        "S(xy) = S(y)S(x)",
        ein("xyk,ck->xyc", m, S),
        ein("ay,bx,abc->xyc", S, S, m),
    )
    r.expect_equal(
        "antipode.anti_comultiplicative",
        "D(S(h)) = S(h2) x S(h1)",
        ein("ch,cab->hab", S, d),
        ein("hxy,ay,bx->hab", d, S, S),
    )
    r.expect_equal("antipode.unit", "S(1) = 1", ein("kh,h->k", S, H.unit), H.unit)
    r.expect_equal("antipode.counit", "eps S = eps", ein("kh,k->h", S, H.counit), H.counit)
    return r


# ---------------------------------------------------------------------------
# Sweedler arrows


def hit(H: WeakBialgebra, phi: Tensor, h: Tensor) -> Tensor:
    """phi -> h = h1 phi(h2)."""
    return ein("i,ijk,k->j", h, H.comult, phi)


def hit_right(H: WeakBialgebra, h: Tensor, phi: Tensor) -> Tensor:
    """h <- phi = phi(h1) h2."""
    return ein("i,ijk,j->k", h, H.comult, phi)


def dual_hit(H: WeakBialgebra, h: Tensor, phi: Tensor) -> Tensor:
    """h |> phi on the dual: x -> phi(x h)."""
    return ein("xhk,h,k->x", H.mult, h, phi)


def dual_hit_right(H: WeakBialgebra, phi: Tensor, h: Tensor) -> Tensor:
    """phi <| h on the dual: x -> phi(h x)."""
    return ein("hxk,h,k->x", H.mult, h, phi)


def hit_matrix(H: WeakBialgebra) -> Tensor:
    """``T[phi, h, out]`` for phi -> h with phi, h running over the bases."""
    return H.comult.transpose(2, 0, 1)


# ---------------------------------------------------------------------------
# subalgebras


def is_subalgebra(A: Algebra, B: Subspace, unital: bool = True) -> bool:
    if unital and not B.contains(A.unit):
        return False
    prods = ein("ia,jb,abk->ijk", B.basis, B.basis, A.mult)
    return B.contains_subspace(Subspace.span(prods.reshape(-1, A.dim), A.dim)) if prods.size else True


def subalgebra(A: Algebra, B: Subspace, names=None) -> Algebra:
    """Structure constants of a unital subalgebra in the echelon basis of ``B``."""
    if not is_subalgebra(A, B):
        raise NotASubalgebra("subspace is not a unital subalgebra")
    prods = ein("ia,jb,abk->ijk", B.basis, B.basis, A.mult)
    mult = B.coords(prods, axis=2)
    return Algebra(A.field, mult, B.coords(A.unit), names or _names("b", B.dim))


def commutant(A: Algebra, B: Subspace, inside: Subspace | None = None) -> Subspace:
    """Elements of ``inside`` (default: all of A) commuting with every element of B."""
    inside = inside or Subspace.full(A.field, A.dim)
    comm = ein("ia,jx,xak->ijk", B.basis, inside.basis, A.mult) - ein("ia,jx,axk->ijk", B.basis, inside.basis, A.mult)
    ker = kernel_of(comm.transpose(0, 2, 1).reshape(-1, inside.dim))
    if ker.dim == 0:
        return Subspace.zero(A.field, A.dim)
    return Subspace.span(ker.basis @ inside.basis, A.dim)


# ---------------------------------------------------------------------------
# right modules over an algebra


@dataclass(frozen=True, eq=False)
class RightModule:
    """``act[m, a, m']``: coefficient of e_m' in e_m . e_a."""

    algebra: Algebra
    act: Tensor

    def __post_init__(self):
        m = self.act.shape[0]
        if self.act.shape != (m, self.algebra.dim, m):
            raise DimMismatch(f"module action shape {self.act.shape}")

    @property
    def dim(self) -> int:
        return self.act.shape[0]

    def same(self, other: RightModule) -> bool:
        return self.act == other.act


def regular_module(A: Algebra) -> RightModule:
    return RightModule(A, A.mult)


def check_right_module(M: RightModule) -> Report:
    A, act = M.algebra, M.act
    r = Report("right module")
    r.expect_equal("associative", "(m.a).b = m.(ab)",
                   ein("max,xby->maby", act, act), ein("abk,mky->maby", A.mult, act), ("m", "a", "b", "out"))
    r.expect_equal("unital", "m.1 = m", ein("max,a->mx", act, A.unit), Tensor.eye(A.field, M.dim))
    return r


def module_hom_space(M: RightModule, N: RightModule) -> Subspace:
    """Intertwiners M -> N as flattened [N, M] matrices."""
    return solve_homogeneous(
        lambda X: [ein("max,yx->may", M.act, X) - ein("xm,xay->may", X, N.act)],
        (N.dim, M.dim), M.algebra.field,
    )


def submodule_of(M: RightModule, N: Subspace) -> RightModule:
    return RightModule(M.algebra, N.coords(ein("im,max->iax", N.basis, M.act), axis=2))


def cyclic_submodule(M: RightModule, v: Tensor) -> Subspace:
    """v . A, computed as the span of v . e_a."""
    return Subspace.span(ein("m,max->ax", v, M.act), M.dim)
