import json

import pytest

from whk.double import yd_unit
from whk.gallery import EXAMPLES, by_name, example_datum, g2, g4
from whk.hopfcore import Algebra, Coalgebra, WeakBialgebra, WeakHopfAlgebra
from whk.kernel import QQ, Field, Tensor
from whk.serialize import (
    InputError,
    action_to_json,
    algebra_from_json,
    algebra_to_json,
    coaction_from_json,
    coaction_to_json,
    datum_from_json,
    datum_to_json,
    dumps,
    load_file,
    loads,
    module_from_json,
    module_to_json,
    tensor_from_json,
    yd_from_json,
    yd_to_json,
)
from whk.smash import build_smash, harvest_modules

F7 = Field.prime(7)
NAMES = ["g2", "g3", "g4", "zn(3)", "dual:g4", "opcop:g4"]


def through_text(obj):
    return loads(dumps(obj))


@pytest.mark.parametrize("fld", [QQ, F7], ids=str)
@pytest.mark.parametrize("name", NAMES)
def test_wha_roundtrip(name, fld):
    H = by_name(name, fld)
    obj = algebra_to_json(H)
    H2 = algebra_from_json(through_text(obj))
    assert isinstance(H2, WeakHopfAlgebra) and H2.same(H)
    assert algebra_to_json(H2) == obj  # bit-exact scalar strings


def test_rationals_are_written_in_lowest_terms():
    t = Tensor.from_values(QQ, ["2/4", "-6/3", 0])
    assert t.to_strings() == ["1/2", "-2", "0"]
    assert tensor_from_json(["2/4", "-6/3", "0"], QQ, (3,), "x") == t


def test_partial_structures():
    H = g4()
    full = algebra_to_json(H)
    alg = {k: v for k, v in full.items() if k not in ("comult", "counit", "antipode")}
    co = {k: v for k, v in full.items() if k not in ("mult", "unit", "antipode")}
    wba = {k: v for k, v in full.items() if k != "antipode"}
    assert isinstance(algebra_from_json(alg), Algebra)
    assert isinstance(algebra_from_json(co), Coalgebra)
    B = algebra_from_json(wba)
    assert isinstance(B, WeakBialgebra) and not isinstance(B, WeakHopfAlgebra)
    assert algebra_from_json(alg).same(H.algebra)


def test_gallery_reference():
    assert algebra_from_json({"gallery": "g4"}).same(g4())
    H = algebra_from_json({"gallery": "g2", "field": {"kind": "prime", "p": 7}})
    assert H.field == F7


@pytest.mark.parametrize("fld", [QQ, F7], ids=str)
@pytest.mark.parametrize("name", ["g2", "g3", "g4"])
def test_datum_roundtrip(name, fld):
    H = by_name(name, fld)
    for ex in EXAMPLES:
        d = example_datum(H, ex)
        obj = through_text(datum_to_json(d))
        d2 = datum_from_json(obj)
        assert d2.same(d) and d2.nondegenerate == d.nondegenerate
        co = coaction_from_json(through_text(coaction_to_json(d.coaction)))
        assert co.same(d.coaction)
        assert json.loads(dumps(action_to_json(d.action))) == action_to_json(d.action)


def test_datum_example_shortcut():
    d = datum_from_json({"example": "ex3", "base": "g3"})
    assert d.same(example_datum(by_name("g3"), "ex3"))


@pytest.mark.parametrize("base,ex", [("g3", "ex1"), ("g2", "ex3"), ("g4", "ex2")])
def test_module_roundtrip(base, ex):
    d = example_datum(by_name(base), ex)
    for M in harvest_modules(d, build_smash(d)):
        assert module_from_json(through_text(module_to_json(M))).same(M)


@pytest.mark.parametrize("fld", [QQ, F7], ids=str)
def test_yd_roundtrip(fld):
    U = yd_unit(g4(fld))
    assert yd_from_json(through_text(yd_to_json(U)), field=fld).same(U)


def test_components_by_path(tmp_path):
    d = example_datum(g4(), "ex2")
    obj = datum_to_json(d)
    (tmp_path / "co.json").write_text(dumps(obj["coaction"]))
    obj["coaction"] = "co.json"
    (tmp_path / "d.json").write_text(dumps(obj))
    d2 = datum_from_json(load_file(tmp_path / "d.json"), tmp_path)
    assert d2.same(d)


@pytest.mark.parametrize("text,line,col", [
    ('{"dim": 2,\n "unit": [1, 0]\n', 3, 1),
    ('{"dim": 2, "unit": [1 0]}', 1, 23),
    ("{\n\n  'dim': 2}", 3, 3),
])
def test_malformed_json_reports_position(text, line, col):
    with pytest.raises(InputError, match=f"line {line} column {col}"):
        loads(text)


def test_top_level_must_be_an_object():
    with pytest.raises(InputError, match="top level"):
        loads("[1, 2]")


def test_missing_file(tmp_path):
    with pytest.raises(InputError, match="cannot read"):
        load_file(tmp_path / "nope.json")


@pytest.mark.parametrize("mutate,match", [
    (lambda o: o.update(mult=o["mult"][:1]), r"mult: expected a list of length 2, got 1"),
    (lambda o: o["unit"].append("0"), r"unit: expected a list of length 2, got 3"),
    (lambda o: o["counit"].__setitem__(0, 1.5), r"counit\[0\]: scalars must be strings"),
    (lambda o: o["counit"].__setitem__(0, "1/0"), r"counit\[0\]: bad scalar"),
    (lambda o: o["counit"].__setitem__(1, True), r"counit\[1\]"),
    (lambda o: o.update(dim=-1), r"dim must be a non-negative integer"),
    (lambda o: o.update(basis=["x"]), r"basis has 1 names"),
    (lambda o: o.update(field={"kind": "complex"}), r"unknown field kind"),
    (lambda o: o.update(field={"kind": "prime", "p": 6}), r"bad prime field"),
    (lambda o: o.pop("dim"), r"missing 'dim'"),
    (lambda o: o.pop("unit"), r"missing 'unit'"),
])
def test_bad_algebra_inputs(mutate, match):
    obj = algebra_to_json(g2())
    mutate(obj)
    with pytest.raises(InputError, match=match):
        algebra_from_json(obj)


def test_no_structure_constants():
    with pytest.raises(InputError, match="no structure constants"):
        algebra_from_json({"field": {"kind": "rational"}, "dim": 1})


def test_bad_coaction_side_and_shape():
    obj = coaction_to_json(example_datum(g2(), "ex1").coaction)
    obj["side"] = "up"
    with pytest.raises(InputError, match="side"):
        coaction_from_json(obj)
    obj = coaction_to_json(example_datum(g2(), "ex1").coaction)
    obj["rho"] = obj["rho"][:-1]
    with pytest.raises(InputError, match="coaction.rho"):
        coaction_from_json(obj)


def test_prime_field_residues():
    t = tensor_from_json(["8", "-1", "1/2"], F7, (3,), "x")
    assert t.to_strings() == ["1", "6", "4"]
