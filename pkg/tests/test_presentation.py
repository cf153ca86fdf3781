from fractions import Fraction

import pytest

from errors import PresentationError
from presentation import (EVEN, ODD, AlgebraPresentation, ExponentVector, FieldExpr, GeneratorDecl, LambdaPoly,
                          Monomial, gen, one, tensor, vop)
from scalars import K


def small_presentation(label: str = "bc", prefix: str = "") -> AlgebraPresentation:
    b, c = f"{prefix}b", f"{prefix}c"
    return AlgebraPresentation(label, [GeneratorDecl(b, ODD), GeneratorDecl(c, ODD)],
                               {(b, c): LambdaPoly({0: one()})})


def test_field_arithmetic() -> None:
    x = gen("a1") * 2 + gen("a2")
    assert x - gen("a2") == gen("a1", coeff=2)
    assert not (x - x)
    assert (x * 0).is_zero()
    assert (K * gen("a1")).coefficient(Monomial((("a1", 0),))) == K
    assert one(3).scalar_value() == 3
    assert gen("a1").scalar_value() is None


def test_exponent_vectors() -> None:
    mu = ExponentVector({"c": 1, "d": Fraction(1, 2)})
    assert mu + (-mu) == ExponentVector()
    assert mu.get("d") == Fraction(1, 2)
    assert mu.scale(2) == ExponentVector({"c": 2, "d": 1})
    assert ExponentVector({"c": 0}).is_zero()
    assert vop({"c": 0}) == one()


def test_lambda_poly_conventions() -> None:
    poly = LambdaPoly({0: gen("a1"), 2: one(3)})
    assert poly.poles() == {1: gen("a1"), 3: one(6)}
    assert poly.product(2) == one(6)
    assert LambdaPoly.from_poles(poly.poles()) == poly
    assert poly.degree() == 2
    assert LambdaPoly({1: FieldExpr()}).is_zero()


def test_duplicate_generators_rejected() -> None:
    with pytest.raises(PresentationError):
        AlgebraPresentation("dup", [GeneratorDecl("x"), GeneratorDecl("x")])


def test_bracket_parity_checked() -> None:
    decls = [GeneratorDecl("x", EVEN), GeneratorDecl("y", ODD)]
    with pytest.raises(PresentationError):
        AlgebraPresentation("bad", decls, {("x", "y"): LambdaPoly({0: one()})})


def test_bracket_declared_once() -> None:
    decls = [GeneratorDecl("x"), GeneratorDecl("y")]
    with pytest.raises(PresentationError):
        AlgebraPresentation("twice", decls, {("x", "y"): LambdaPoly({1: one()}),
                                             ("y", "x"): LambdaPoly({1: one(-1)})})


def test_free_and_check_expr() -> None:
    P = small_presentation()
    assert P.is_free()
    P.check_expr(gen("b"))
    with pytest.raises(PresentationError):
        P.check_expr(gen("z"))
    with pytest.raises(PresentationError):
        P.check_expr(vop({"b": 1}))


def test_tensor_products() -> None:
    P = tensor(small_presentation("one"), small_presentation("two", prefix="t"))
    assert P.names() == ["b", "c", "tb", "tc"]
    assert P.label == "one ⊗ two"
    with pytest.raises(PresentationError):
        tensor(small_presentation(), small_presentation())
