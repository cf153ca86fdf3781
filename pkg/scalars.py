#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Exact scalars: rational functions of the level k with rational coefficients

Values are kept as numerator/denominator pairs of sympy ring elements with a
monic denominator and no common factor, so two equal scalars are always
structurally equal and hash the same.
"""

from fractions import Fraction
from typing import Optional, Union

from sympy import QQ
from sympy.polys.rings import PolyElement, ring

from errors import ScalarError

_RING, _K = ring("k", QQ)
_ONE = _RING.one
_ZERO = _RING.zero

ScalarLike = Union["Scalar", int, Fraction]


def _qq(value: Union[int, Fraction]):
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    return QQ(int(value))


def _to_fraction(coeff) -> Fraction:
    return Fraction(int(coeff.numerator), int(coeff.denominator))


def _poly(value) -> PolyElement:
    if isinstance(value, PolyElement):
        return value
    if isinstance(value, (int, Fraction)):
        return _RING.ground_new(_qq(value))
    raise ScalarError(f"cannot build a polynomial in k from {value!r}")


def scalar_normalize(numerator, denominator=1) -> "Scalar":
    """Canonical representative of numerator/denominator"""
    if isinstance(numerator, Scalar) or isinstance(denominator, Scalar):
        return Scalar(numerator, denominator)
    num = _poly(numerator)
    den = _poly(denominator)
    if not den:
        raise ScalarError("zero denominator")
    if not num:
        return Scalar._raw(_ZERO, _ONE)
    if den.is_ground:
        if den != _ONE:
            num = num.quo_ground(den.LC)
        return Scalar._raw(num, _ONE)
    g = num.gcd(den)
    if not g.is_ground:
        num = num.exquo(g)
        den = den.exquo(g)
    lead = den.LC
    if lead != QQ.one:
        num = num.quo_ground(lead)
        den = den.monic()
    return Scalar._raw(num, den)


class Scalar:
    """Immutable element of Q(k)"""

    __slots__ = ("num", "den", "_hash")

    def __init__(self, value: ScalarLike = 0, denominator: ScalarLike = 1):
        if isinstance(value, Scalar) and denominator == 1:
            self.num, self.den = value.num, value.den
        else:
            top = value if isinstance(value, Scalar) else Scalar._raw(_poly(value), _ONE)
            bottom = denominator if isinstance(denominator, Scalar) else Scalar._raw(_poly(denominator), _ONE)
            if not bottom.num:
                raise ScalarError("zero denominator")
            result = scalar_normalize(top.num * bottom.den, top.den * bottom.num)
            self.num, self.den = result.num, result.den
        self._hash = None

    @classmethod
    def _raw(cls, num: PolyElement, den: PolyElement) -> "Scalar":
        obj = cls.__new__(cls)
        obj.num = num
        obj.den = den
        obj._hash = None
        return obj

    @classmethod
    def k(cls) -> "Scalar":
        return cls._raw(_K, _ONE)

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        from fieldtext import parse_scalar
        return parse_scalar(text)

    # -- predicates -------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self) -> bool:
        return bool(self.num)

    def is_constant(self) -> bool:
        return self.num.is_ground and self.den == _ONE

    def constant(self) -> Fraction:
        if not self.is_constant():
            raise ScalarError(f"{self} depends on k")
        return _to_fraction(self.num.LC) if self.num else Fraction(0)

    def integer_part(self) -> Optional[int]:
        """The integer when this scalar is a constant integer, else None"""
        if not self.is_constant():
            return None
        value = self.constant()
        if value.denominator != 1:
            return None
        return int(value)

    def denominator_is_power_of(self, shift: int) -> bool:
        """True when the denominator is (k+shift)^e for some e >= 0"""
        if self.den == _ONE:
            return True
        return (_K + shift) ** self.den.degree() == self.den

    # -- evaluation -------------------------------------------------------
    @staticmethod
    def _eval_poly(poly: PolyElement, point: Fraction) -> Fraction:
        total = Fraction(0)
        for (exp,), coeff in poly.items():
            total += _to_fraction(coeff) * point ** exp
        return total

    def eval(self, k0: Union[int, Fraction]) -> Fraction:
        point = Fraction(k0)
        bottom = self._eval_poly(self.den, point)
        if bottom == 0:
            raise ScalarError(f"pole at k = {point}")
        return self._eval_poly(self.num, point) / bottom

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def coerce(other) -> "Scalar":
        if isinstance(other, Scalar):
            return other
        if isinstance(other, (int, Fraction)):
            return Scalar._raw(_poly(other), _ONE)
        raise TypeError(f"not a scalar: {other!r}")

    def __add__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if self.den == _ONE and o.den == _ONE:
            return Scalar._raw(self.num + o.num, _ONE)
        if self.den == o.den:
            return scalar_normalize(self.num + o.num, self.den)
        return scalar_normalize(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return Scalar._raw(-self.num, self.den)

    def __sub__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return Scalar.coerce(other) - self

    def __mul__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        if not self.num or not o.num:
            return Scalar._raw(_ZERO, _ONE)
        if self.den == _ONE and o.den == _ONE:
            return Scalar._raw(self.num * o.num, _ONE)
        return scalar_normalize(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def inverse(self) -> "Scalar":
        if not self.num:
            raise ScalarError("zero denominator")
        return scalar_normalize(self.den, self.num)

    def __truediv__(self, other):
        try:
            o = Scalar.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return Scalar.coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return Scalar._raw(self.num ** exponent, self.den ** exponent)

    # -- identity ---------------------------------------------------------
    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Scalar.coerce(other)
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((tuple(sorted(self.num.items())), tuple(sorted(self.den.items()))))
        return self._hash

    def __str__(self) -> str:
        top = format_poly(self.num)
        if self.den == _ONE:
            return top
        if len(self.num) > 1 or "/" in top:
            top = f"({top})"
        bottom = format_poly(self.den)
        if len(self.den) > 1 or "*" in bottom:
            bottom = f"({bottom})"
        return f"{top}/{bottom}"

    def __repr__(self) -> str:
        return f"Scalar({str(self)!r})"


def format_poly(poly: PolyElement) -> str:
    if not poly:
        return "0"
    pieces = []
    for (exp,), coeff in sorted(poly.items(), reverse=True):
        value = _to_fraction(coeff)
        sign = "-" if value < 0 else "+"
        value = abs(value)
        if exp == 0:
            body = str(value)
        else:
            power = "k" if exp == 1 else f"k^{exp}"
            body = power if value == 1 else f"{value}*{power}"
        pieces.append((sign, body))
    first_sign, first_body = pieces[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in pieces[1:]:
        text += f"{sign}{body}"
    return text


def scalar_eval(s: Scalar, k0: Union[int, Fraction]) -> Fraction:
    return s.eval(k0)


def integer_part(s: Scalar) -> Optional[int]:
    return s.integer_part()


ZERO = Scalar(0)
ONE = Scalar(1)
K = Scalar.k()
