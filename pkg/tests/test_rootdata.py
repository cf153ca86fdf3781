from fractions import Fraction

import pytest

from errors import RangeError
from rootdata import (basis, cartan_matrix, classify_root, dual_basis, e, f, good_grading, grading_element, h,
                      hook_nilpotent, inner, inner_combination, inverse_cartan, parse_basis, positive_roots,
                      root_vector, structure_constants, verify_goodness)


def test_roots_and_basis() -> None:
    assert positive_roots(3) == [(1, 1), (1, 2), (1, 3), (2, 2), (2, 3), (3, 3)]
    assert root_vector(4, 2, 3) == (0, 1, 1, 0)
    assert len(basis(3)) == 15
    with pytest.raises(RangeError):
        root_vector(3, 2, 4)


def test_parse_basis() -> None:
    assert parse_basis("e[1,2]") == e(1, 2)
    assert parse_basis("f3") == f(3)
    assert parse_basis("h[2]") == h(2)
    assert str(e(1, 3)) == "e[1,3]"
    with pytest.raises(RangeError):
        parse_basis("x[1]")


def test_cartan_inverse() -> None:
    c, inv = cartan_matrix(3), inverse_cartan(3)
    for i in range(3):
        for j in range(3):
            total = sum(c[i][t] * inv[t][j] for t in range(3))
            assert total == (1 if i == j else 0)
    assert inv[1][1] == 1


def test_structure_constants() -> None:
    assert structure_constants(3, e(1), e(2, 3)) == {e(1, 3): 1}
    assert structure_constants(3, f(2, 3), f(1)) == {f(1, 3): 1}
    assert structure_constants(3, e(1), f(1)) == {h(1): 1}
    assert structure_constants(3, h(1), e(1)) == {e(1): 2}
    assert structure_constants(3, h(2), e(1)) == {e(1): -1}
    assert structure_constants(3, e(1), e(3)) == {}


def test_invariant_form() -> None:
    assert inner(3, e(1, 2), f(1, 2)) == 1
    assert inner(3, h(1), h(1)) == 2
    assert inner(3, h(1), h(2)) == -1
    assert inner(3, e(1), e(1)) == 0


def test_dual_basis() -> None:
    dual = dual_basis(3)
    for x in basis(3):
        for y in basis(3):
            assert inner_combination(3, {x: Fraction(1)}, dual[y]) == (1 if x == y else 0)


def test_classify_roots() -> None:
    assert classify_root(4, (2, 2), 3) == "internal"
    assert classify_root(4, (1, 2), 3) == "exposed"
    assert classify_root(4, (2, 3), 3) == "exposed"
    with pytest.raises(RangeError):
        classify_root(4, (1, 3), 3)


def test_good_gradings() -> None:
    assert good_grading(5, 3).grade == (0, 0, 1, 1, 1)
    assert good_grading(3, 3).zero_roots() == [(1, 1), (1, 2), (2, 2)]
    x = grading_element(3, 3)
    assert x == {h(1): Fraction(1, 4), h(2): Fraction(1, 2), h(3): Fraction(3, 4)}


@pytest.mark.parametrize("n, m", [(1, 1), (2, 1), (2, 2), (3, 3), (3, 4), (4, 3), (5, 3)])
def test_hook_gradings_are_good(n: int, m: int) -> None:
    assert verify_goodness(n, m)


def test_bar_variant() -> None:
    rep = hook_nilpotent(4, 3, "bar")
    assert f(1, 3) in dict(rep.terms)
    assert verify_goodness(4, 3, "bar")


def test_hook_range() -> None:
    with pytest.raises(RangeError):
        good_grading(3, 5)
