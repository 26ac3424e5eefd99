"""Built-in instances: groupoid algebras and the four standard Doi-Hopf data."""

from __future__ import annotations

import itertools
import re

import numpy as np

from .comodact import WeakAction, WeakCoaction, restrict_coaction_to_subalgebra
from .doihopf import DoiHopfDatum, build_datum
from .errors import NotAGroupoid
from .hopfcore import Coalgebra, WeakHopfAlgebra
from .kernel import QQ, Field, Tensor, ein


def groupoid_algebra(
    n_objects: int,
    morphisms: list[tuple[str, int, int]],
    table: dict[tuple[str, str], str],
    field: Field = QQ,
) -> WeakHopfAlgebra:
    """Groupoid algebra with basis the morphisms.

    ``morphisms`` lists ``(name, source, target)``; ``table[(g, h)]`` is the
    composite ``g o h`` (defined when ``source(g) == target(h)``).
    """
    names = [m[0] for m in morphisms]
    if len(set(names)) != len(names):
        raise NotAGroupoid("duplicate morphism names")
    idx = {name: i for i, name in enumerate(names)}
    src = {name: s for name, s, _ in morphisms}
    tgt = {name: t for name, _, t in morphisms}
    for name in names:
        if not (0 <= src[name] < n_objects and 0 <= tgt[name] < n_objects):
            raise NotAGroupoid(f"{name} has an endpoint outside the objects", (name,))

    def compose(g, h):
        if src[g] != tgt[h]:
            return None
        try:
            k = table[(g, h)]
        except KeyError:
            raise NotAGroupoid(f"missing composite {g} o {h}", (g, h)) from None
        if k not in idx or src[k] != src[h] or tgt[k] != tgt[g]:
            raise NotAGroupoid(f"bad composite {g} o {h} = {k}", (g, h))
        return k

    for g, h, k in itertools.product(names, repeat=3):
        gh = compose(g, h)
        hk = compose(h, k)
        if gh is not None and hk is not None and compose(gh, k) != compose(g, hk):
            raise NotAGroupoid(f"composition not associative at ({g}, {h}, {k})", (g, h, k))
    ids = {}
    for x in range(n_objects):
        cands = [
            e for e in names
            if src[e] == tgt[e] == x
            and all(compose(e, g) == g for g in names if tgt[g] == x)
            and all(compose(g, e) == g for g in names if src[g] == x)
        ]
        if not cands:
            raise NotAGroupoid(f"object {x} has no identity", (x,))
        ids[x] = cands[0]
    inv = {}
    for g in names:
        cands = [h for h in names if compose(g, h) == ids[src[h]] and compose(h, g) == ids[src[g]]]
        if not cands:
            raise NotAGroupoid(f"{g} has no inverse", (g,))
        inv[g] = cands[0]

    n = len(names)
    mult = np.zeros((n, n, n), dtype=np.int64)
    comult = np.zeros((n, n, n), dtype=np.int64)
    S = np.zeros((n, n), dtype=np.int64)
    for g in names:
        i = idx[g]
        comult[i, i, i] = 1
        S[idx[inv[g]], i] = 1
        for h in names:
            k = compose(g, h)
            if k is not None:
                mult[i, idx[h], idx[k]] = 1
    unit = np.zeros(n, dtype=np.int64)
    for e in ids.values():
        unit[idx[e]] = 1
    return WeakHopfAlgebra(
        field,
        Tensor(field, mult),
        Tensor(field, unit),
        Tensor(field, comult),
        Tensor(field, np.ones(n, dtype=np.int64)),
        tuple(names),
        Tensor(field, S),
    )


def zn(n: int, field: Field = QQ) -> WeakHopfAlgebra:
    """Group algebra of the cyclic group of order ``n``; basis g^0 .. g^(n-1)."""
    names = ["e"] + (["g"] if n == 2 else [f"g{i}" for i in range(1, n)])
    morphisms = [(name, 0, 0) for name in names]
    table = {(names[i], names[j]): names[(i + j) % n] for i in range(n) for j in range(n)}
    return groupoid_algebra(1, morphisms, table, field)


def pair(n: int, field: Field = QQ) -> WeakHopfAlgebra:
    """Pair groupoid on ``n`` objects; ``e_ij`` is the arrow j -> i, so e_ij e_jk = e_ik."""
    morphisms = [(f"e{i + 1}{j + 1}", j, i) for i in range(n) for j in range(n)]
    table = {}
    for i, j, k in itertools.product(range(n), repeat=3):
        table[(f"e{i + 1}{j + 1}", f"e{j + 1}{k + 1}")] = f"e{i + 1}{k + 1}"
    return groupoid_algebra(n, morphisms, table, field)


def isolated(n: int, field: Field = QQ) -> WeakHopfAlgebra:
    """Groupoid of ``n`` objects with identities only."""
    morphisms = [(f"e{i + 1}", i, i) for i in range(n)]
    table = {(f"e{i + 1}", f"e{i + 1}"): f"e{i + 1}" for i in range(n)}
    return groupoid_algebra(n, morphisms, table, field)


def g2(field: Field = QQ) -> WeakHopfAlgebra:
    return zn(2, field)


def g3(field: Field = QQ) -> WeakHopfAlgebra:
    return isolated(2, field)


def g4(field: Field = QQ) -> WeakHopfAlgebra:
    return pair(2, field)


_NAMED = {"g2": g2, "g3": g3, "g4": g4}


def by_name(name: str, field: Field = QQ) -> WeakHopfAlgebra:
    """Resolve a gallery name such as ``g4``, ``zn(3)``, ``pair(3)``, ``dual:g4``, ``opcop:dual:g2``."""
    name = name.strip().lower()
    if name.startswith("dual:"):
        return by_name(name[5:], field).dual()
    if name.startswith("opcop:"):
        return by_name(name[6:], field).opcop()
    if name in _NAMED:
        return _NAMED[name](field)
    m = re.fullmatch(r"(zn|pair|isolated)\((\d+)\)", name)
    if m:
        k = int(m.group(2))
        if k < 1:
            raise ValueError(f"{name}: size must be positive")
        return {"zn": zn, "pair": pair, "isolated": isolated}[m.group(1)](k, field)
    raise ValueError(f"unknown gallery name {name!r}")


GALLERY_NAMES = ("g2", "g3", "g4", "zn(n)", "pair(n)", "isolated(n)", "dual:<name>", "opcop:<name>")


def example_datum(H: WeakHopfAlgebra, which: str) -> DoiHopfDatum:
    """The standard right Doi-Hopf data ``ex1`` .. ``ex4`` built from ``H`` (``K`` for ex4)."""
    builders = {"ex1": ex1_datum, "ex2": ex2_datum, "ex3": ex3_datum, "ex4": ex4_datum}
    try:
        return builders[which](H)
    except KeyError:
        raise ValueError(f"unknown example {which!r}; expected one of {sorted(builders)}") from None


def base_coalgebra_forms(H: WeakHopfAlgebra) -> tuple[Tensor, Tensor]:
    """Both displayed forms of the comultiplication on H^L, in H (x) H coordinates.

    ``first[i, p, q]`` expands 1_(2) a (x) S(1_(1)) and ``second`` expands
    1_(2) (x) a S(1_(1)) for the i-th echelon basis vector ``a`` of H^L.
    """
    B = H.HL.basis
    first = ein("xy,ik,ykp,qx->ipq", H.delta_one, B, H.mult, H.antipode)
    second = ein("xy,ik,qx,kqr->iyr", H.delta_one, B, H.antipode, H.mult)
    return first, second


def base_coalgebra(H: WeakHopfAlgebra) -> Coalgebra:
    """H^L with the coalgebra structure a -> 1_(2) a (x) S(1_(1)) and the restricted counit."""
    HL = H.HL
    first, _ = base_coalgebra_forms(H)
    comult = HL.coords(HL.coords(first, axis=1), axis=2)
    counit = ein("ik,k->i", HL.basis, H.counit)
    return Coalgebra(H.field, comult, counit, tuple(f"L{i}" for i in range(HL.dim)))


def base_right_action(H: WeakHopfAlgebra) -> Tensor:
    """``a . h = 1_(2) eps(a h 1_(1))`` on H^L, as ``act[i, h, j]`` in echelon coordinates."""
    HL = H.HL
    W = ein("ik,khz,zxw,w->ihx", HL.basis, H.mult, H.mult, H.counit)
    return HL.coords(ein("ihx,xy->ihy", W, H.delta_one), axis=2)


def ex1_datum(H: WeakHopfAlgebra) -> DoiHopfDatum:
    coaction = WeakCoaction("left", H, H.algebra, H.comult)
    action = WeakAction("right", H, base_coalgebra(H), base_right_action(H))
    return build_datum(H, coaction, action, "right")


def ex2_datum(H: WeakHopfAlgebra) -> DoiHopfDatum:
    full = WeakCoaction("left", H, H.algebra, H.comult)
    coaction = restrict_coaction_to_subalgebra(full, H.HL)
    action = WeakAction("right", H, H.coalgebra, H.mult)
    return build_datum(H, coaction, action, "right")


def ex3_datum(H: WeakHopfAlgebra) -> DoiHopfDatum:
    coaction = WeakCoaction("left", H, H.algebra, H.comult)
    action = WeakAction("right", H, H.coalgebra, H.mult)
    return build_datum(H, coaction, action, "right")


def ex4_host(K: WeakHopfAlgebra) -> WeakHopfAlgebra:
    """K^op (x) K."""
    return K.op().tensor(K)


def ex4_datum(K: WeakHopfAlgebra) -> DoiHopfDatum:
    n = K.dim
    H = ex4_host(K)
    d2 = ein("axy,yzw->axzw", K.comult, K.comult)
    rho = ein("axzw,pw->apxz", d2, K.S_inv).reshape(n, n * n, n)
    act = ein("ack,kbl->cabl", K.mult, K.mult).reshape(n, n * n, n)
    coaction = WeakCoaction("left", H, K.algebra, rho)
    action = WeakAction("right", H, K.coalgebra, act)
    return build_datum(H, coaction, action, "right")


EXAMPLES = ("ex1", "ex2", "ex3", "ex4")


__all__ = [
    "GALLERY_NAMES",
    "EXAMPLES",
    "by_name",
    "base_coalgebra",
    "base_coalgebra_forms",
    "base_right_action",
    "ex4_host",
    "example_datum",
    "ex1_datum",
    "ex2_datum",
    "ex3_datum",
    "ex4_datum",
    "g2",
    "g3",
    "g4",
    "groupoid_algebra",
    "isolated",
    "pair",
    "zn",
]
