"""Command-line interface: ``whk check|build|integrals|gallery|suite``.

Exit status is 0 when every requested check passes, 1 when some check fails
and 2 on unusable input (malformed JSON, wrong shapes, unknown names).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from .adjoint import Comodule, coinduce_Ghat, induce_G
from .comodact import check_comodule_algebra, check_module_coalgebra, check_nondegenerate
from .doihopf import DoiHopfDatum, check_datum, check_module
from .double import build_double, build_twisted_double, check_double, check_yd
from .errors import AxiomFailure, DegenerateDatum, WHKError
from .gallery import EXAMPLES, by_name, example_datum
from .hopfcore import (
    Algebra,
    Coalgebra,
    RightModule,
    WeakBialgebra,
    WeakHopfAlgebra,
    check_algebra,
    check_coalgebra,
    check_right_module,
    check_wba,
    check_wha,
    regular_module,
)
from .integrals import compute_V4, example_report, example_v0, integral_space, normalized_elements
from .kernel import Field, Tensor
from .report import Report
from .serialize import (
    InputError,
    action_from_json,
    algebra_from_json,
    algebra_to_json,
    coaction_from_json,
    datum_from_json,
    dumps,
    load_file,
    module_from_json,
    module_to_json,
    tensor_from_json,
    yd_from_json,
)
from .smash import build_smash
from .suites import run_suite

CHECK_KINDS = ("algebra", "coalgebra", "wba", "wha", "coaction", "action", "datum", "module", "yd")
BUILD_KINDS = ("dual", "opcop", "tensor", "smash", "double", "twisted-double", "induce", "coinduce")
INTEGRAL_KINDS = ("space", "v4", "v0", "normalized")
SUITE_NAMES = ("all", "wha", "examples", "duality", "smash", "adjunction", "double", "integrals")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--in", dest="inputs", action="append", default=[], metavar="PATH",
                        help="JSON input file (repeat for binary constructions)")
    common.add_argument("--base", action="append", default=[], metavar="NAME",
                        help="gallery name such as g2, g4, zn(3), dual:g4 (repeatable)")
    common.add_argument("--datum", metavar="EXAMPLE|PATH", help="ex1..ex4 (with --base) or a datum JSON file")
    common.add_argument("--field", default="rational", help="rational or fp:<p> (default rational)")
    common.add_argument("--out", metavar="PATH", help="write the JSON result here")
    common.add_argument("--report", choices=("text", "json"), default="text")
    common.add_argument("--max-dim", type=int, default=64, help="refuse bases above this dimension (default 64)")

    p = argparse.ArgumentParser(prog="whk", description="Exact checks for weak Hopf algebras and Doi-Hopf data.")
    sub = p.add_subparsers(dest="command", required=True)
    c = sub.add_parser("check", parents=[common], help="validate a structure")
    c.add_argument("kind", choices=CHECK_KINDS)
    b = sub.add_parser("build", parents=[common], help="construct a derived structure")
    b.add_argument("kind", choices=BUILD_KINDS)
    i = sub.add_parser("integrals", parents=[common], help="integral spaces and Doi-Hopf integrals")
    i.add_argument("kind", choices=INTEGRAL_KINDS)
    i.add_argument("--example", help="example number 1-4 (for v0)")
    g = sub.add_parser("gallery", parents=[common], help="emit a gallery weak Hopf algebra")
    g.add_argument("name")
    s = sub.add_parser("suite", parents=[common], help="run a verification suite")
    s.add_argument("name", choices=SUITE_NAMES)
    return p


# ---------------------------------------------------------------------------
# input resolution


def _field(args) -> Field:
    try:
        return Field.from_string(args.field)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _guard(H, args):
    if H.dim > args.max_dim:
        raise InputError(f"dimension {H.dim} exceeds --max-dim {args.max_dim}")
    return H


def _gallery(name: str, args) -> WeakHopfAlgebra:
    try:
        return _guard(by_name(name, _field(args)), args)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def _load(path: str) -> tuple[dict, Path]:
    return load_file(path), Path(path).parent


def _structure(args, index: int = 0):
    """A structure from ``--in`` (index-th) or ``--base``."""
    if len(args.inputs) > index:
        obj, _ = _load(args.inputs[index])
        return _guard(algebra_from_json(obj, _field(args)), args)
    if len(args.base) > index:
        return _gallery(args.base[index], args)
    raise InputError("need --in PATH or --base NAME")


def _example_name(text: str) -> str:
    name = text if text.startswith("ex") else f"ex{text}"
    if name not in EXAMPLES:
        raise InputError(f"unknown example {text!r}; use 1-4")
    return name


def _datum(args, validate: bool = True) -> tuple[DoiHopfDatum, WeakHopfAlgebra | None, str | None]:
    """(datum, K, example): K is the base algebra for gallery examples."""
    ref = args.datum
    if ref is None and args.inputs:
        ref = args.inputs[0]
    if ref is None:
        raise InputError("need --datum ex1..ex4 (with --base) or --datum PATH")
    if ref.startswith("ex") and not ref.endswith(".json"):
        which = _example_name(ref)
        if not args.base:
            raise InputError(f"--datum {ref} needs --base NAME")
        K = _gallery(args.base[0], args)
        return example_datum(K, which), K, which
    obj, base_dir = _load(ref)
    if "example" in obj:
        which = _example_name(str(obj["example"]))
        K = _gallery(str(obj.get("base", "")), args)
        return example_datum(K, which), K, which
    return datum_from_json(obj, base_dir, _field(args), validate=validate), None, None


def _tensor_field(x, key: str, shape, field, where: str) -> Tensor:
    if key not in x:
        raise InputError(f"{where}: missing '{key}'")
    return tensor_from_json(x[key], field, shape, f"{where}.{key}")


# ---------------------------------------------------------------------------
# commands


def _check(args) -> tuple[Report, dict | None]:
    kind = args.kind
    fld = _field(args)
    if kind in ("algebra", "coalgebra", "wba", "wha"):
        X = _structure(args)
        if kind == "wha":
            if not isinstance(X, WeakHopfAlgebra):
                raise InputError("a weak Hopf algebra needs mult, unit, comult, counit and antipode")
            return check_wha(X), None
        if kind == "wba":
            if not isinstance(X, WeakBialgebra):
                raise InputError("a weak bialgebra needs mult, unit, comult and counit")
            return check_wba(X), None
        if kind == "algebra":
            if isinstance(X, WeakBialgebra):
                X = X.algebra
            if not isinstance(X, Algebra):
                raise InputError("an algebra needs mult and unit")
            return check_algebra(X), None
        if isinstance(X, WeakBialgebra):
            X = X.coalgebra
        if not isinstance(X, Coalgebra):
            raise InputError("a coalgebra needs comult and counit")
        return check_coalgebra(X), None
    if not args.inputs:
        if kind == "datum" and args.datum:
            d, _, _ = _datum(args, validate=False)
            return check_datum(d), None
        raise InputError(f"check {kind} needs --in PATH")
    obj, base_dir = _load(args.inputs[0])
    if kind == "coaction":
        x = coaction_from_json(obj, base_dir, fld)
        r = check_comodule_algebra(x)
        r.extend(check_nondegenerate(x), "nondegeneracy.")
        return r, None
    if kind == "action":
        x = action_from_json(obj, base_dir, fld)
        r = check_module_coalgebra(x)
        r.extend(check_nondegenerate(x), "nondegeneracy.")
        return r, None
    if kind == "datum":
        d, _, _ = _datum(args, validate=False)
        return check_datum(d), None
    if kind == "module":
        return check_module(module_from_json(obj, base_dir, fld)), None
    return check_yd(yd_from_json(obj, base_dir, fld)), None


def _a_module(args, d: DoiHopfDatum, index: int) -> RightModule:
    if len(args.inputs) <= index:
        return regular_module(d.A)
    obj, _ = _load(args.inputs[index])
    n = obj.get("dim")
    if not isinstance(n, int):
        raise InputError("module: missing integer 'dim'")
    N = RightModule(d.A, _tensor_field(obj, "act", (n, d.A.dim, n), d.field, "module"))
    check_right_module(N).raise_if_failed(AxiomFailure)
    return N


def _comodule(args, d: DoiHopfDatum, index: int) -> Comodule:
    if len(args.inputs) <= index:
        return Comodule(d.C, d.C.comult)
    obj, _ = _load(args.inputs[index])
    n = obj.get("dim")
    if not isinstance(n, int):
        raise InputError("comodule: missing integer 'dim'")
    return Comodule(d.C, _tensor_field(obj, "rho", (n, d.C.dim, n), d.field, "comodule"))


def _build(args) -> tuple[Report, dict]:
    kind = args.kind
    r = Report(f"build {kind}")
    if kind in ("dual", "opcop", "double", "twisted-double"):
        H = _structure(args)
        if not isinstance(H, WeakBialgebra):
            raise InputError(f"build {kind} needs a weak bialgebra")
        if kind == "dual":
            return r, algebra_to_json(H.dual())
        if kind == "opcop":
            return r, algebra_to_json(H.opcop())
        if not isinstance(H, WeakHopfAlgebra):
            raise InputError(f"build {kind} needs an antipode")
        if kind == "double":
            D = build_double(H, validate=False)
            r.extend(check_double(D))
            return r, algebra_to_json(D.wha)
        X, D = build_twisted_double(H)
        return r, algebra_to_json(X)
    if kind == "tensor":
        A, B = _structure(args, 0), _structure(args, 1)
        if not (isinstance(A, WeakBialgebra) and isinstance(B, WeakBialgebra)):
            raise InputError("build tensor needs two weak bialgebras")
        return r, algebra_to_json(A.tensor(B))
    if kind == "smash":
        d, _, _ = _datum(args)
        S = build_smash(d)
        return r, algebra_to_json(S.algebra)
    d, _, _ = _datum(args)
    offset = 0 if args.datum else 1  # --in may carry the datum itself
    if kind == "induce":
        GN = induce_G(_a_module(args, d, offset), d)
        r.extend(check_module(GN.module))
        return r, module_to_json(GN.module)
    GM = coinduce_Ghat(_comodule(args, d, offset), d)
    r.extend(check_module(GM.module))
    return r, module_to_json(GM.module)


def _space_json(sp) -> dict:
    return {"dim": sp.dim, "basis": sp.basis.to_strings()}


def _integrals(args) -> tuple[Report, dict]:
    kind = args.kind
    if kind == "space":
        H = _structure(args)
        if not isinstance(H, WeakHopfAlgebra):
            raise InputError("integrals space needs a weak Hopf algebra")
        left, right = integral_space(H, "left"), integral_space(H, "right")
        r = Report("integral spaces")
        r.info("left.dim", "left integrals", str(left.space.dim))
        r.info("right.dim", "right integrals", str(right.space.dim))
        return r, {"left": _space_json(left.space), "right": _space_json(right.space),
                   "right_nondegenerate": right.nondegenerate}
    if kind == "v0":
        if not args.example:
            raise InputError("integrals v0 needs --example 1-4")
        which = _example_name(args.example)
        K = _structure(args)
        d = example_datum(K, which)
        Kx = K if which == "ex4" else None
        r = example_report(d, which, K=Kx)
        ex, _ = example_v0(d, which, Kx)
        return r, {"example": which, "v0": _space_json(ex.space)}
    d, _, _ = _datum(args)
    V = compute_V4(d)
    r = Report(f"integrals {kind}")
    r.info("v4.dim", "dim V4", str(V.space.dim))
    out = {"shape": list(V.shape), "v4": _space_json(V.space)}
    if kind == "normalized":
        N = normalized_elements(V)
        r.info("normalized", "normalized elements", "none" if N.is_empty else f"affine of dim {N.homogeneous.dim}")
        out["normalized"] = None if N.is_empty else {
            "particular": N.particular.to_strings(), "directions": _space_json(N.homogeneous)}
    return r, out


def _emit(obj: dict | None, report: Report, args) -> None:
    """Results go to --out or stdout; a text report shares stdout only when no result is printed there."""
    if args.out and obj is not None:
        Path(args.out).write_text(dumps(obj) + "\n")
    to_stdout = obj is not None and not args.out
    if args.report == "json":
        payload = {"report": report.to_dict()}
        if to_stdout:
            payload["result"] = obj
        print(json.dumps(payload, indent=1))
        return
    if to_stdout:
        print(dumps(obj))
    if report.checks or obj is None:
        print(report.to_text(), file=sys.stderr if to_stdout else sys.stdout)


def run(argv: list[str] | None = None) -> int:
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "gallery":
            report, obj = Report(f"gallery {args.name}"), algebra_to_json(_gallery(args.name, args))
        elif args.command == "suite":
            bases = args.base or ["g2", "g3", "g4"]
            for b in bases:
                _gallery(b, args)
            report, obj = run_suite(args.name, bases, _field(args)), None
        elif args.command == "check":
            report, obj = _check(args)
        elif args.command == "build":
            report, obj = _build(args)
        else:
            report, obj = _integrals(args)
    except (InputError, DegenerateDatum) as exc:
        print(f"whk: error: {exc}", file=sys.stderr)
        return 2
    except AxiomFailure as exc:
        rep = exc.report if isinstance(exc.report, Report) else Report(str(exc))
        print(f"whk: {exc}", file=sys.stderr)
        _emit(None, rep, args)
        return 1
    except (WHKError, ValueError) as exc:
        print(f"whk: error: {exc}", file=sys.stderr)
        return 2
    _emit(obj, report, args)
    return 0 if report.passed else 1


def main() -> None:
    try:
        code = run()
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head); silence the interpreter's flush at exit
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = 1
    sys.exit(code)


__all__ = ["main", "run"]
