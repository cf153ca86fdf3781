from fractions import Fraction

from opecore import lambda_bracket
from presentation import LambdaPoly, gen, one
from scalars import K
from sl4data import (MINIMAL_GENERATORS, embedding_presentation, embedding_sl4_table, minimal_central_charge,
                     minimal_sl4_presentation, minimal_sl4_wakimoto_table, simple_generators, wakimoto_sl4_table)


def test_table_shapes() -> None:
    names = simple_generators()
    assert len(names) == 9
    assert set(wakimoto_sl4_table()) == set(names)
    assert set(embedding_sl4_table()) == set(names)
    assert wakimoto_sl4_table()["e[3,3]"] == gen("B[3,3]")
    assert set(minimal_sl4_wakimoto_table()) == {"E", "J", "H", "P[1,+]"}


def test_table_text_and_override() -> None:
    table = wakimoto_sl4_table()
    replaced = table.with_image("e[3,3]", gen("B[2,3]"))
    assert replaced["e[3,3]"] == gen("B[2,3]")
    assert table["e[3,3]"] == gen("B[3,3]")
    assert table.to_text()["e[3,3]"] == str(gen("B[3,3]"))


def test_minimal_presentation() -> None:
    P = minimal_sl4_presentation()
    assert P.names() == [decl.name for decl in MINIMAL_GENERATORS]
    assert not P.is_free()
    virasoro = lambda_bracket(P, "L", "L")
    assert virasoro.raw[3] == one(minimal_central_charge() * Fraction(1, 12))
    assert lambda_bracket(P, "F", "E") == LambdaPoly({0: gen("H") * -1, 1: one(K + 1)})
    assert lambda_bracket(P, "L", "P[1,+]").raw[1] == gen("P[1,+]") * Fraction(3, 2)


def test_embedding_presentation_contains_both_sides() -> None:
    P = embedding_presentation()
    for name in ("L", "P[2,-]", "c", "d", "B[2,3]", "G[3,3]"):
        assert P.has(name)
    assert embedding_sl4_table().presentation is P


def test_wakimoto_sl2_triple_at_alpha3() -> None:
    table = wakimoto_sl4_table()
    bracket = lambda_bracket(table.presentation, table["e[3,3]"], table["f[3,3]"])
    assert bracket == LambdaPoly({0: table["h[3]"], 1: one(K)})
    assert lambda_bracket(table.presentation, table["e[1,1]"], table["e[3,3]"]).is_zero()


def test_minimal_wakimoto_current_level() -> None:
    table = minimal_sl4_wakimoto_table()
    assert lambda_bracket(table.presentation, table["J"], table["J"]) == LambdaPoly({1: one(K + 2)})
