"""Named verification suites over gallery bases.

Every suite takes a list of gallery names and a field and returns one
:class:`Report` whose check ids are prefixed by suite, base and example.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator

import numpy as np

from .adjoint import check_adjunction, standard_modules
from .comodact import is_nondegenerate
from .doihopf import check_datum, dual_datum
from .double import (
    build_double,
    check_double,
    check_unitors,
    check_yd,
    check_yd_double_roundtrip,
    double_to_yd,
    yd_tensor,
    yd_unit,
)
from .errors import WHKError
from .gallery import EXAMPLES, by_name, example_datum
from .hopfcore import WeakHopfAlgebra, check_wha, regular_module
from .integrals import example_report, left_integral_comparison, pin_convention
from .kernel import QQ, Field, Tensor
from .report import Report
from .smash import build_smash, check_functors, check_smash, example_iso, harvest_modules, harvest_smash_modules

DEFAULT_BASES = ("g2", "g3", "g4")
WHA_EXTRA = ("dual:g4", "zn(3)")


def _fail(r: Report, id: str, anchor: str, exc: Exception) -> None:
    r.expect(id, anchor, False, {"error": type(exc).__name__, "message": str(exc)})


def _examples(bases, field) -> Iterator[tuple[str, WeakHopfAlgebra, str]]:
    for b in bases:
        H = by_name(b, field)
        for ex in EXAMPLES:
            yield b, H, ex


# ---------------------------------------------------------------------------
# WHA axioms and mutations


def mutations(H: WeakHopfAlgebra) -> Iterator[tuple[str, tuple[int, ...], WeakHopfAlgebra]]:
    """Every copy of ``H`` with exactly one structure constant increased by 1."""
    for name in ("mult", "unit", "comult", "counit", "antipode"):
        t: Tensor = getattr(H, name)
        vals = t.values()
        for idx in zip(*(a.ravel() for a in np.indices(t.shape))):
            bumped = vals.copy()
            bumped[idx] = H.field.add(bumped[idx], H.field.one)
            parts = {k: getattr(H, k) for k in ("mult", "unit", "comult", "counit", "antipode")}
            parts[name] = Tensor.from_values(H.field, bumped.tolist(), shape=t.shape)
            yield name, tuple(int(i) for i in idx), WeakHopfAlgebra(
                H.field, parts["mult"], parts["unit"], parts["comult"], parts["counit"], H.names, parts["antipode"]
            )


def wha_suite(bases, field: Field = QQ, with_mutations: bool = True) -> Report:
    r = Report("WBA/WHA axioms")
    for b in bases:
        H = by_name(b, field)
        r.extend(check_wha(H), f"wha.{b}.")
        if not with_mutations:
            continue
        caught = total = 0
        missed = []
        for name, idx, Hm in mutations(H):
            rep = check_wha(Hm)
            total += 1
            bad = rep.failures()
            if bad and bad[0].witness is not None:
                caught += 1
            else:
                missed.append([name, list(idx)])
        r.expect(f"wha.{b}.mutations", "every one-entry perturbation fails with a witness", not missed,
                 {"missed": missed[:10], "total": total}, f"{caught}/{total} caught")
    return r


# ---------------------------------------------------------------------------
# data and duality


def examples_suite(bases, field: Field = QQ) -> Report:
    r = Report("standard Doi-Hopf data")
    for b, H, ex in _examples(bases, field):
        p = f"examples.{b}.{ex}"
        try:
            d = example_datum(H, ex)
        except WHKError as exc:
            _fail(r, f"{p}.build", "datum builds", exc)
            continue
        r.extend(check_datum(d), f"{p}.")
        r.expect(f"{p}.right_nondegenerate", "non-degenerate right datum", d.side == "right" and d.nondegenerate)
    return r


def duality_suite(bases, field: Field = QQ) -> Report:
    r = Report("duality")
    for b in bases:
        H = by_name(b, field)
        r.expect(f"duality.{b}.wha.involutive", "H^^ = H entrywise", H.dual().dual().same(H))
        r.extend(check_wha(H.dual()), f"duality.{b}.dual_wha.")
    for b, H, ex in _examples(bases, field):
        p = f"duality.{b}.{ex}"
        d = example_datum(H, ex)
        dd = dual_datum(d)
        r.extend(check_datum(dd), f"{p}.dual.")
        r.expect(f"{p}.side", "dual of a right datum is a left datum", dd.side == "left")
        r.expect(f"{p}.involutive", "dual twice is the identity", dual_datum(dd).same(d))
        flags = {
            "coaction": is_nondegenerate(d.coaction),
            "action": is_nondegenerate(d.action),
            "dual.coaction": is_nondegenerate(dd.coaction),
            "dual.action": is_nondegenerate(dd.action),
        }
        r.expect(f"{p}.nondegenerate.transport", "coaction/action non-degeneracy swap under duality",
                 flags["coaction"] == flags["dual.action"] and flags["action"] == flags["dual.coaction"], flags)
    return r


# ---------------------------------------------------------------------------
# smash products and the category isomorphism


def smash_suite(bases, field: Field = QQ) -> Report:
    """Smash algebra axioms, the comparison isomorphism iota, and P/P' round trips for ex1-ex3."""
    r = Report("smash products")
    for b, H, ex in _examples(bases, field):
        p = f"smash.{b}.{ex}"
        d = example_datum(H, ex)
        try:
            S = build_smash(d)
        except WHKError as exc:
            _fail(r, f"{p}.build", "smash product is an associative unital algebra", exc)
            continue
        r.extend(check_smash(S), f"{p}.")
        r.info(f"{p}.dim", "dimension of the smash product", str(S.dim))
        try:
            _, rep = example_iso(d, ex, K=H if ex == "ex4" else None, S=S)
            r.extend(rep, f"{p}.iota.")
        except WHKError as exc:
            r.extend(getattr(exc, "report", None) or Report(), f"{p}.iota.")
            _fail(r, f"{p}.iota", "iota is an algebra isomorphism", exc)
        if ex != "ex4":
            for i, N in enumerate(harvest_smash_modules(S)):
                r.extend(check_functors(None, N, S), f"{p}.functors.{i}.")
            for i, M in enumerate(harvest_modules(d, S)):
                r.extend(check_functors(M, None, S), f"{p}.functors.{i}.")
    return r


# ---------------------------------------------------------------------------
# adjunctions


def adjunction_suite(bases, field: Field = QQ) -> Report:
    r = Report("adjunctions")
    for b, H, ex in _examples(bases, field):
        d = example_datum(H, ex)
        a_mods, comods = standard_modules(d)
        r.extend(check_adjunction(d, harvest_modules(d), a_mods, comods), f"adjunction.{b}.{ex}.")
    return r


# ---------------------------------------------------------------------------
# doubles and YD modules


def yd_harvest(H: WeakHopfAlgebra, D=None) -> list:
    """The monoidal unit and the YD module coming from the regular D(H)-module."""
    D = D or build_double(H)
    return [yd_unit(H), double_to_yd(regular_module(D.wha.algebra), D)]


def double_suite(bases, field: Field = QQ) -> Report:
    r = Report("Drinfel'd doubles and YD modules")
    for b in bases:
        H = by_name(b, field)
        p = f"double.{b}"
        try:
            D = build_double(H)
        except WHKError as exc:
            _fail(r, f"{p}.build", "double is a well-defined WHA", exc)
            continue
        r.extend(check_double(D), f"{p}.")
        r.info(f"{p}.dim", "dimension of D(H)", str(D.dim))
        mods = yd_harvest(H, D)
        for i, M in enumerate(mods):
            r.extend(check_yd(M), f"yd.{b}.{i}.")
            r.extend(check_yd_double_roundtrip(M, D), f"yd.{b}.{i}.double.")
        for i, M in enumerate(mods):
            for j, N in enumerate(mods):
                r.extend(check_yd(yd_tensor(M, N).module), f"yd.{b}.tensor.{i}.{j}.")
                r.extend(check_unitors(M, N), f"yd.{b}.unitors.{i}.{j}.")
    return r


# ---------------------------------------------------------------------------
# integrals


def integrals_suite(bases, field: Field = QQ) -> Report:
    r = Report("Doi-Hopf integrals")
    for b, H, ex in _examples(bases, field):
        p = f"integrals.{b}.{ex}"
        try:
            d = example_datum(H, ex)
            r.extend(example_report(d, ex, K=H if ex == "ex4" else None), f"{p}.")
        except WHKError as exc:
            _fail(r, f"{p}.run", "integral computations complete", exc)
    for b in bases:
        H = by_name(b, field)
        chosen, results = pin_convention(example_datum(H, "ex2"))
        r.info(f"integrals.{b}.convention", "dual-integral convention", f"{chosen} {results}")
        r.extend(left_integral_comparison(H), f"integrals.{b}.left.")
    return r


SUITES: dict[str, Callable[..., Report]] = {
    "wha": wha_suite,
    "examples": examples_suite,
    "duality": duality_suite,
    "smash": smash_suite,
    "adjunction": adjunction_suite,
    "double": double_suite,
    "integrals": integrals_suite,
}


def run_suite(name: str, bases=DEFAULT_BASES, field: Field = QQ) -> Report:
    if name == "all":
        r = Report("all suites")
        r.extend(wha_suite(list(bases) + [x for x in WHA_EXTRA if x not in bases], field))
        for key in ("examples", "duality", "smash", "adjunction", "double", "integrals"):
            r.extend(SUITES[key](bases, field))
        return r
    try:
        return SUITES[name](bases, field)
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; expected 'all' or one of {sorted(SUITES)}") from None
