import pytest

from whk.errors import NotAGroupoid, WHKError
from whk.gallery import (
    EXAMPLES,
    base_coalgebra_forms,
    by_name,
    ex4_host,
    example_datum,
    g2,
    g3,
    g4,
    groupoid_algebra,
    isolated,
    pair,
    zn,
)
from whk.hopfcore import check_wha
from whk.kernel import Field, QQ, Tensor

F7 = Field.prime(7)


def test_groupoid_examples():
    H = groupoid_algebra(2, [("a", 0, 0), ("b", 1, 1)], {("a", "a"): "a", ("b", "b"): "b"})
    assert H.same(g3()) and H.dim == 2
    assert g4().dim == 4 and g4().names == ("e11", "e12", "e21", "e22")
    G = groupoid_algebra(1, [("e", 0, 0), ("g", 0, 0)],
                         {("e", "e"): "e", ("e", "g"): "g", ("g", "e"): "g", ("g", "g"): "e"})
    assert G.same(g2())


def test_groupoid_structure_constants():
    H = g4()
    i = {nm: k for k, nm in enumerate(H.names)}
    # e12 e21 = e11, e21 e12 = e22, e12 e12 = 0
    assert H.mul(H.basis_vector(i["e12"]), H.basis_vector(i["e21"])) == H.basis_vector(i["e11"])
    assert H.mul(H.basis_vector(i["e21"]), H.basis_vector(i["e12"])) == H.basis_vector(i["e22"])
    assert H.mul(H.basis_vector(i["e12"]), H.basis_vector(i["e12"])) == Tensor.zeros(QQ, (4,))
    assert H.S.matrix.item(i["e21"], i["e12"]) == 1
    assert H.unit == Tensor.from_values(QQ, [1, 0, 0, 1])


@pytest.mark.parametrize("morphisms,table", [
    ([("a", 0, 0), ("a", 0, 0)], {}),
    ([("a", 0, 3)], {}),
    ([("e", 0, 0), ("g", 0, 0)], {("e", "e"): "e", ("e", "g"): "g", ("g", "e"): "g"}),
    ([("e", 0, 0), ("g", 0, 0)], {("e", "e"): "e", ("e", "g"): "g", ("g", "e"): "g", ("g", "g"): "g"}),
    ([("e", 0, 0), ("g", 0, 0)], {("e", "e"): "g", ("e", "g"): "g", ("g", "e"): "g", ("g", "g"): "g"}),
])
def test_not_a_groupoid(morphisms, table):
    with pytest.raises(NotAGroupoid):
        groupoid_algebra(4 if morphisms[0][2] == 3 else 1, morphisms, table)


def test_by_name():
    assert by_name("g2").same(zn(2)) and by_name("g3").same(isolated(2)) and by_name("g4").same(pair(2))
    assert by_name("dual:g4").same(g4().dual())
    assert by_name("opcop:g4").same(g4().opcop())
    assert by_name("zn(3)", F7).field == F7
    for bad in ("g5", "zn(0)", "pair(x)", "dual:"):
        with pytest.raises((ValueError, WHKError)):
            by_name(bad)


@pytest.mark.parametrize("fld", [QQ, F7], ids=str)
@pytest.mark.parametrize("name", ["g2", "g3", "g4", "zn(3)", "pair(3)", "isolated(3)", "dual:g4", "opcop:g4"])
def test_every_gallery_wha_passes(name, fld):
    assert check_wha(by_name(name, fld)).passed


def test_example_shapes():
    d1 = example_datum(g3(), "ex1")
    assert d1.nondegenerate and d1.C.dim == 2
    d2 = example_datum(g4(), "ex2")
    assert d2.nondegenerate and d2.A.dim == 2
    d4 = example_datum(g2(), "ex4")
    assert d4.H.dim == 4 and d4.H.same(g2().op().tensor(g2())) and d4.nondegenerate
    assert ex4_host(g4()).dim == 16
    with pytest.raises(ValueError):
        example_datum(g2(), "ex5")


@pytest.mark.parametrize("fld", [QQ, F7], ids=str)
@pytest.mark.parametrize("name", ["g2", "g3", "g4"])
def test_examples_validate(name, fld):
    H = by_name(name, fld)
    for ex in EXAMPLES:
        d = example_datum(H, ex)
        assert d.side == "right" and d.nondegenerate, ex


@pytest.mark.parametrize("name", ["g2", "g3", "g4", "zn(3)", "pair(3)", "dual:g4"])
def test_base_coalgebra_forms_agree(name):
    first, second = base_coalgebra_forms(by_name(name))
    assert first == second


def test_base_coalgebra_of_g2_is_one_dimensional():
    d = example_datum(g2(), "ex1")
    assert d.C.dim == 1
    assert d.C.comult == Tensor.from_values(QQ, [[[1]]]) and d.C.counit == Tensor.from_values(QQ, [1])
