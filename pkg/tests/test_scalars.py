from fractions import Fraction

import pytest

from errors import ScalarError
from scalars import K, ONE, ZERO, Scalar


def test_arithmetic_normalizes() -> None:
    x = (K * K - 1) / (K + 1)
    assert x == K - 1
    assert str(x) == "k-1"
    assert (K + 4) / (2 * K + 8) == Fraction(1, 2)


def test_equal_values_hash_the_same() -> None:
    a = (K + 2) / (K + 4)
    b = 1 - 2 / (K + 4)
    assert a == b
    assert hash(a) == hash(b)
    assert len({a, b}) == 1


def test_mixed_operands() -> None:
    assert K * Fraction(1, 2) + Fraction(1, 2) * K == K
    assert 3 - K == -(K - 3)
    assert 1 / (1 / (K + 3)) == K + 3


def test_zero_and_one() -> None:
    assert not ZERO
    assert ONE == 1
    assert (K - K).is_zero()


def test_division_by_zero() -> None:
    with pytest.raises(ScalarError):
        K / ZERO
    with pytest.raises(ScalarError):
        ZERO.inverse()


def test_constant_and_integer_part() -> None:
    assert Scalar(Fraction(3, 2)).constant() == Fraction(3, 2)
    assert Scalar(7).integer_part() == 7
    assert Scalar(Fraction(7, 2)).integer_part() is None
    assert K.integer_part() is None
    with pytest.raises(ScalarError):
        K.constant()


def test_eval_and_poles() -> None:
    s = K * (2 * K + 3) / (K + 4)
    assert s.eval(1) == Fraction(5, 5)
    with pytest.raises(ScalarError):
        s.eval(-4)


def test_denominator_powers() -> None:
    assert (1 / (K + 4) ** 2).denominator_is_power_of(4)
    assert K.denominator_is_power_of(4)
    assert not (1 / (K + 3)).denominator_is_power_of(4)
    assert not (1 / ((K + 4) * (K + 1))).denominator_is_power_of(4)


def test_printing() -> None:
    assert str(2 * (K + 4)) == "2*k+8"
    assert str(-K) == "-k"
    assert str(Scalar(Fraction(-1, 2))) == "-1/2"
    assert str(1 / (K + 4)) == "1/(k+4)"
