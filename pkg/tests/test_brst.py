from fractions import Fraction

import pytest

from brst import (NAMED, NAMED_HOOK, ReductionDatum, brst_differential, brst_em_field, central_charge,
                  hook_central_charge, hook_datum, j_level, reduction_datum)
from errors import CriticalLevelError, GradingError, RangeError
from opecore import lambda_bracket
from presentation import one
from rootdata import f, h
from scalars import K, Scalar
from sl4data import minimal_central_charge


def test_named_data_are_good() -> None:
    for name in NAMED:
        R = reduction_datum(name)
        assert R.is_good()
        assert R.name == name
    with pytest.raises(RangeError):
        reduction_datum("sl5-sub")


def test_datum_validation() -> None:
    with pytest.raises(GradingError):
        ReductionDatum("bad", 1, ((f(1), Fraction(1)),), (Fraction(0),))
    with pytest.raises(GradingError):
        ReductionDatum("short", 2, ((f(1), Fraction(1)),), (Fraction(1),))


def test_grading_element() -> None:
    R = reduction_datum("sl2-prin")
    assert R.x == {h(1): Fraction(1, 2)}
    assert R.x_norm() == Fraction(1, 2)
    assert [str(x) for x in R.positive] == ["e[1,1]"]
    assert R.half == []
    assert hook_datum(3, 3).name == "sl4-hook3"


def test_virasoro_central_charge() -> None:
    c = central_charge(reduction_datum("sl2-prin"))
    assert c == 1 - 6 * (K + 1) * (K + 1) / (K + 2)
    assert central_charge(reduction_datum("sl2-prin"), 1) == Scalar(-7)


def test_w3_central_charge() -> None:
    assert hook_central_charge(2, 1) == 2 - 24 * (K + 2) * (K + 2) / (K + 3)


@pytest.mark.parametrize("name", sorted(["sl2-prin", "sl3-prin", "sl3-min-dynkin", "sl4-min-dynkin"]))
def test_hook_formula_matches_reduction(name: str) -> None:
    assert central_charge(reduction_datum(name)) == hook_central_charge(*NAMED_HOOK[name])


def test_minimal_sl4_central_charge() -> None:
    assert hook_central_charge(3, 3) == minimal_central_charge()


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_hook_formula_at_m_equal_n_plus_one_is_affine(n: int) -> None:
    assert hook_central_charge(n, n + 1) == K * (n * (n + 2)) / (K + (n + 1))


def test_critical_level() -> None:
    with pytest.raises(CriticalLevelError):
        central_charge(reduction_datum("sl2-prin"), -2)
    with pytest.raises(CriticalLevelError):
        hook_central_charge(3, 3, -4)
    with pytest.raises(CriticalLevelError):
        brst_em_field(reduction_datum("sl3-min"), -3)
    with pytest.raises(RangeError):
        hook_central_charge(3, 5)


def test_j_level() -> None:
    assert j_level(3, 3) == K + 2
    assert j_level(3, 3, 0) == Scalar(2)
    with pytest.raises(RangeError):
        j_level(3, 1)


def test_sl2_complex() -> None:
    R = reduction_datum("sl2-prin")
    P = R.presentation
    d = brst_differential(R)
    assert lambda_bracket(P, d, d).is_zero()
    L = brst_em_field(R)
    virasoro = lambda_bracket(P, L, L)
    assert virasoro.raw[1] == L * 2
    assert virasoro.raw[3] == one(central_charge(R) * Fraction(1, 12))


@pytest.mark.parametrize("level", [1, Fraction(1, 2), -3])
def test_sl2_complex_at_numeric_level(level) -> None:
    R = reduction_datum("sl2-prin")
    P = R.presentation_at(Scalar(level))
    assert P is not R.presentation
    d = brst_differential(R, level)
    assert lambda_bracket(P, d, d).is_zero()
    L = brst_em_field(R, level)
    virasoro = lambda_bracket(P, L, L)
    assert virasoro.raw[1] == L * 2
    assert virasoro.raw[3] == one(central_charge(R, level) * Fraction(1, 12))
