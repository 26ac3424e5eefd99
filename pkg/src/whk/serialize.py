"""JSON interchange for structure constants, coactions, actions, data and modules.

Scalars are strings: decimal integers or ``"p/q"`` in lowest terms; over a
prime field they are residues.  A left coaction is stored as its matrix of
shape (dim H * dim A) x dim A with the H factor major, a right coaction with
the A factor major; actions are dim C x dim H x dim C arrays.  Components of
data and modules may be inline objects, paths to JSON files, or gallery
names (``{"gallery": "g4"}``).
"""

from __future__ import annotations

import json
from pathlib import Path

from .comodact import WeakAction, WeakCoaction
from .doihopf import DoiHopfDatum, DoiHopfModule, build_datum
from .double import YDModule
from .errors import WHKError
from .gallery import by_name, example_datum
from .hopfcore import Algebra, Coalgebra, RightModule, WeakBialgebra, WeakHopfAlgebra
from .kernel import QQ, Field, LinMap, Tensor


class InputError(WHKError):
    """Malformed or inconsistent input; carries a human-readable location."""


# ---------------------------------------------------------------------------
# emit


def field_to_json(field: Field) -> dict:
    return field.to_json()


def tensor_to_json(t: Tensor):
    return t.to_strings()


def algebra_to_json(x) -> dict:
    """Any of Algebra, Coalgebra, WeakBialgebra, WeakHopfAlgebra."""
    out = {"field": field_to_json(x.field), "dim": x.dim, "basis": list(x.names)}
    if isinstance(x, (Algebra, WeakBialgebra)):
        out["unit"] = tensor_to_json(x.unit)
        out["mult"] = tensor_to_json(x.mult)
    if isinstance(x, (Coalgebra, WeakBialgebra)):
        out["comult"] = tensor_to_json(x.comult)
        out["counit"] = tensor_to_json(x.counit)
    if isinstance(x, WeakHopfAlgebra):
        out["antipode"] = tensor_to_json(x.antipode)
    return out


def coaction_to_json(x: WeakCoaction) -> dict:
    return {
        "field": field_to_json(x.H.field),
        "side": x.side,
        "H": algebra_to_json(x.H),
        "A": algebra_to_json(x.A),
        "rho": tensor_to_json(x.as_linmap().matrix),
    }


def action_to_json(x: WeakAction) -> dict:
    return {
        "field": field_to_json(x.H.field),
        "side": x.side,
        "H": algebra_to_json(x.H),
        "C": algebra_to_json(x.C),
        "act": tensor_to_json(x.act),
    }


def datum_to_json(d: DoiHopfDatum) -> dict:
    return {"side": d.side, "coaction": coaction_to_json(d.coaction), "action": action_to_json(d.action)}


def module_to_json(M: DoiHopfModule) -> dict:
    return {"datum": datum_to_json(M.datum), "dim": M.dim, "act": tensor_to_json(M.act), "rho": tensor_to_json(M.rho)}


def right_module_to_json(M: RightModule) -> dict:
    return {"algebra": algebra_to_json(M.algebra), "dim": M.dim, "act": tensor_to_json(M.act)}


def yd_to_json(M: YDModule) -> dict:
    return {"H": algebra_to_json(M.H), "dim": M.dim, "act": tensor_to_json(M.act), "rho": tensor_to_json(M.rho)}


def linmap_to_json(f: LinMap) -> dict:
    return {"field": field_to_json(f.field), "matrix": tensor_to_json(f.matrix)}


def dumps(obj: dict) -> str:
    return json.dumps(obj, indent=1, sort_keys=False)


# ---------------------------------------------------------------------------
# parse


def loads(text: str, source: str = "<input>") -> dict:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: malformed JSON at line {exc.lineno} column {exc.colno}: {exc.msg}") from None
    if not isinstance(obj, dict):
        raise InputError(f"{source}: top level must be an object")
    return obj


def load_file(path: str | Path) -> dict:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return loads(text, str(path))


def _resolve(ref, base_dir: Path | None):
    """Inline object, path string, or {"gallery": name}; returns (object dict, base dir)."""
    if isinstance(ref, str):
        p = Path(ref) if base_dir is None else base_dir / ref
        return load_file(p), p.parent
    if isinstance(ref, dict):
        return ref, base_dir
    raise InputError(f"expected an object or a path, got {type(ref).__name__}")


def field_from_json(obj, default: Field | None = None) -> Field:
    if obj is None:
        if default is None:
            raise InputError("missing field")
        return default
    if not isinstance(obj, dict) or "kind" not in obj:
        raise InputError("field must be an object with a 'kind'")
    if obj["kind"] == "rational":
        return QQ
    if obj["kind"] == "prime":
        try:
            return Field.prime(int(obj["p"]))
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"bad prime field: {exc}") from None
    raise InputError(f"unknown field kind {obj['kind']!r}")


def _check_scalar(s, field: Field, where: str):
    if isinstance(s, bool) or not isinstance(s, (str, int)):
        raise InputError(f"{where}: scalars must be strings or integers, got {s!r}")
    try:
        v = field(s)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise InputError(f"{where}: bad scalar {s!r} ({exc})") from None
    return v


def tensor_from_json(data, field: Field, shape: tuple[int, ...], where: str) -> Tensor:
    def walk(x, depth, path):
        if depth == len(shape):
            return _check_scalar(x, field, f"{where}{path}")
        if not isinstance(x, list) or len(x) != shape[depth]:
            got = len(x) if isinstance(x, list) else type(x).__name__
            raise InputError(f"{where}{path}: expected a list of length {shape[depth]}, got {got}")
        return [walk(y, depth + 1, f"{path}[{i}]") for i, y in enumerate(x)]

    vals = walk(data, 0, "")
    return Tensor.from_values(field, vals, shape=shape)


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise InputError(f"{where}: missing '{key}'")
    return obj[key]


def algebra_from_json(obj: dict, field: Field | None = None, where: str = "algebra"):
    """Returns the richest structure the fields allow: WHA, WBA, Algebra or Coalgebra."""
    if "gallery" in obj:
        return by_name(obj["gallery"], field_from_json(obj.get("field"), field or QQ))
    fld = field_from_json(obj.get("field"), field)
    n = _require(obj, "dim", where)
    if not isinstance(n, int) or n < 0:
        raise InputError(f"{where}: dim must be a non-negative integer")
    names = obj.get("basis") or [f"e{i}" for i in range(n)]
    if len(names) != n:
        raise InputError(f"{where}: basis has {len(names)} names for dim {n}")
    names = tuple(str(x) for x in names)
    has_alg = "mult" in obj or "unit" in obj
    has_co = "comult" in obj or "counit" in obj
    alg = co = None
    if has_alg:
        mult = tensor_from_json(_require(obj, "mult", where), fld, (n, n, n), f"{where}.mult")
        unit = tensor_from_json(_require(obj, "unit", where), fld, (n,), f"{where}.unit")
        alg = (mult, unit)
    if has_co:
        comult = tensor_from_json(_require(obj, "comult", where), fld, (n, n, n), f"{where}.comult")
        counit = tensor_from_json(_require(obj, "counit", where), fld, (n,), f"{where}.counit")
        co = (comult, counit)
    if alg and co:
        if "antipode" in obj:
            S = tensor_from_json(obj["antipode"], fld, (n, n), f"{where}.antipode")
            return WeakHopfAlgebra(fld, alg[0], alg[1], co[0], co[1], names, S)
        return WeakBialgebra(fld, alg[0], alg[1], co[0], co[1], names)
    if alg:
        return Algebra(fld, alg[0], alg[1], names)
    if co:
        return Coalgebra(fld, co[0], co[1], names)
    raise InputError(f"{where}: no structure constants")


def _component(obj: dict, key: str, base_dir, field, kind: str):
    ref = _require(obj, key, kind)
    sub, _ = _resolve(ref, base_dir)
    return algebra_from_json(sub, field, f"{kind}.{key}")


def _as_algebra(x, where: str) -> Algebra:
    if isinstance(x, WeakBialgebra):
        return x.algebra
    if isinstance(x, Algebra):
        return x
    raise InputError(f"{where}: expected an algebra")


def _as_coalgebra(x, where: str) -> Coalgebra:
    if isinstance(x, WeakBialgebra):
        return x.coalgebra
    if isinstance(x, Coalgebra):
        return x
    raise InputError(f"{where}: expected a coalgebra")


def _as_wba(x, where: str) -> WeakBialgebra:
    if not isinstance(x, WeakBialgebra):
        raise InputError(f"{where}: expected a weak bialgebra")
    return x


def coaction_from_json(obj: dict, base_dir=None, field: Field | None = None) -> WeakCoaction:
    fld = field_from_json(obj.get("field"), field)
    H = _as_wba(_component(obj, "H", base_dir, fld, "coaction"), "coaction.H")
    A = _as_algebra(_component(obj, "A", base_dir, fld, "coaction"), "coaction.A")
    side = _require(obj, "side", "coaction")
    if side not in ("left", "right"):
        raise InputError(f"coaction.side must be 'left' or 'right', got {side!r}")
    m = tensor_from_json(_require(obj, "rho", "coaction"), fld, (H.dim * A.dim, A.dim), "coaction.rho")
    return WeakCoaction.from_linmap(side, H, A, LinMap(m))


def action_from_json(obj: dict, base_dir=None, field: Field | None = None) -> WeakAction:
    fld = field_from_json(obj.get("field"), field)
    H = _as_wba(_component(obj, "H", base_dir, fld, "action"), "action.H")
    C = _as_coalgebra(_component(obj, "C", base_dir, fld, "action"), "action.C")
    side = _require(obj, "side", "action")
    if side not in ("left", "right"):
        raise InputError(f"action.side must be 'left' or 'right', got {side!r}")
    act = tensor_from_json(_require(obj, "act", "action"), fld, (C.dim, H.dim, C.dim), "action.act")
    return WeakAction(side, H, C, act)


def datum_from_json(obj: dict, base_dir=None, field: Field | None = None, validate: bool = True) -> DoiHopfDatum:
    """A datum object, or ``{"example": "ex3", "base": "g3"}`` for a standard example."""
    if "example" in obj:
        H = by_name(_require(obj, "base", "datum"), field_from_json(obj.get("field"), field or QQ))
        return example_datum(H, obj["example"])
    side = _require(obj, "side", "datum")
    co_obj, co_dir = _resolve(_require(obj, "coaction", "datum"), base_dir)
    ac_obj, ac_dir = _resolve(_require(obj, "action", "datum"), base_dir)
    co = coaction_from_json(co_obj, co_dir, field)
    ac = action_from_json(ac_obj, ac_dir, field)
    if validate:
        return build_datum(co.H, co, ac, side)
    return DoiHopfDatum(side, co, ac)


def module_from_json(obj: dict, base_dir=None, field: Field | None = None) -> DoiHopfModule:
    d_obj, d_dir = _resolve(_require(obj, "datum", "module"), base_dir)
    d = datum_from_json(d_obj, d_dir, field)
    n = _require(obj, "dim", "module")
    act = tensor_from_json(_require(obj, "act", "module"), d.field, (n, d.A.dim, n), "module.act")
    rho = tensor_from_json(_require(obj, "rho", "module"), d.field, (n, d.C.dim, n), "module.rho")
    return DoiHopfModule(d, act, rho)


def yd_from_json(obj: dict, base_dir=None, field: Field | None = None) -> YDModule:
    fld = field_from_json(obj.get("field"), field)
    H = _as_wba(_component(obj, "H", base_dir, fld, "yd"), "yd.H")
    n = _require(obj, "dim", "yd")
    act = tensor_from_json(_require(obj, "act", "yd"), H.field, (n, H.dim, n), "yd.act")
    rho = tensor_from_json(_require(obj, "rho", "yd"), H.field, (n, H.dim, n), "yd.rho")
    return YDModule(H, act, rho)


__all__ = [
    "InputError",
    "action_from_json",
    "action_to_json",
    "algebra_from_json",
    "algebra_to_json",
    "coaction_from_json",
    "coaction_to_json",
    "datum_from_json",
    "datum_to_json",
    "dumps",
    "field_from_json",
    "linmap_to_json",
    "load_file",
    "loads",
    "module_from_json",
    "module_to_json",
    "right_module_to_json",
    "tensor_from_json",
    "yd_from_json",
    "yd_to_json",
]
