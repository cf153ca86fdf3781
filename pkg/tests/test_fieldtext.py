import pytest

from errors import ParseError
from fieldtext import NO, Der, Gen, Lin, Vop, parse_field, parse_scalar, pretty, pretty_poles, to_raw
from freefields import parse_stack
from opecore import canonicalize
from presentation import ExponentVector, FieldExpr
from scalars import K


def test_parse_scalars() -> None:
    assert parse_scalar("-3*k*(2*k+3)/(k+4)") == -3 * K * (2 * K + 3) / (K + 4)
    assert parse_scalar("(k+4)^2") == (K + 4) ** 2
    assert parse_scalar("-3/4") == parse_scalar("-6/8")


def test_parse_trees() -> None:
    assert parse_field("B[1,2]") == Gen("B[1,2]")
    assert parse_field("der(2, c)") == Der(2, Gen("c"))
    assert parse_field("no(B[1,1], G[1,1])") == NO(Gen("B[1,1]"), Gen("G[1,1]"))
    node = parse_field("vop{a3: -1/(k+4)}")
    assert node == Vop(ExponentVector({"a3": -1 / (K + 4)}))
    assert isinstance(parse_field("a1 + 2*a2"), Lin)


def test_generator_names_with_signs() -> None:
    assert parse_field("P[1,+]") == Gen("P[1,+]")
    assert parse_field("phi[e,1,2]") == Gen("phi[e,1,2]")


@pytest.mark.parametrize("text", ["", "a1 +", "no(a1)", "der(x, a1)", "a1 * a2", "a1 / a2", "a1 $ a2"])
def test_parse_errors(text: str) -> None:
    with pytest.raises(ParseError):
        parse_field(text)


def test_parse_error_reports_span() -> None:
    with pytest.raises(ParseError) as info:
        parse_field("a1 $ a2")
    assert info.value.span == (3, 4)


def test_pretty_reads_back() -> None:
    P = parse_stack("heis:n=3+ghosts:n=3:m=3+pi").presentation
    for text in ("a1 - 2*no(B[1,1], G[1,1])",
                 "(k+2)*der(1, G[1,2]) + no(G[1,2], vop{a3: -1/(k+4)})",
                 "1/2*no(c, vop{c: -1}) + 1/2*no(d, vop{c: -1})",
                 "3"):
        expr = canonicalize(P, text)
        assert canonicalize(P, pretty(expr)) == expr
        assert canonicalize(P, to_raw(expr)) == expr


def test_pretty_forms() -> None:
    assert pretty(FieldExpr()) == "0"
    assert pretty(FieldExpr.identity(K + 4)) == "k+4"
    assert pretty(FieldExpr.generator("a1", coeff=-1)) == "-a1"
    assert pretty_poles({2: FieldExpr.identity(2)}) == "{2: 2}"
