#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Lambda-bracket and operator product engine

Every field is a combination of canonical monomials, i.e. ordered products of
(-1)-modes acting on a lattice state:

    :f1 (f2 (... (fr e^nu))): = f1_(-1) f2_(-1) ... fr_(-1) |nu>

All products are reduced to mode actions a_(q) b.  Non-negative modes come
from lambda-brackets (sesquilinearity, the right Wick rule, skew-symmetry),
negative modes of composite fields from the Borcherds identity

    (b_(-1) R)_(q) Y = sum_j  b_(-1-j) R_(q+j) Y  +  p(b,R) R_(q-1-j) b_(j) Y

and modes of e^mu in closed form.  Results are memoised per engine.
"""

import itertools
import random
import sys
import weakref
from contextlib import contextmanager
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

from errors import BudgetExceeded, PairingError, PresentationError
from fieldtext import Der, Gen, Lin, NO, Node, One, Vop, parse_field
from presentation import (IDENTITY, AlgebraPresentation, ExponentVector, FieldExpr,
                          LambdaPoly, Monomial, OPEResult, tensor)
from scalars import ONE, ZERO, Scalar
from settings import DEFAULT_BUDGET

RECURSION_LIMIT = 20000

Acc = Dict[Monomial, Scalar]
FieldLike = Union[FieldExpr, str]

_ENGINES: "weakref.WeakSet[OPEEngine]" = weakref.WeakSet()
_BUDGET = [DEFAULT_BUDGET]

__all__ = [
    "OPEEngine", "canonicalize", "lambda_bracket", "ope", "vop_product",
    "zero_mode_action", "derivative", "nth_product", "normal_order",
    "substitute", "tensor", "coerce_field", "expr_parity", "set_budget", "clear_memos",
]


def _add(acc: Acc, mono: Monomial, coeff: Scalar) -> None:
    value = acc.get(mono)
    acc[mono] = coeff if value is None else value + coeff


def _add_expr(acc: Acc, expr: FieldExpr, factor: Scalar = ONE) -> None:
    for mono, coeff in expr.terms.items():
        _add(acc, mono, coeff * factor)


def _falling(q: int, p: int) -> int:
    value = 1
    for i in range(p):
        value *= q - i
    return value


class OPEEngine:
    """Memoising evaluator for one presentation"""

    def __init__(self, presentation: AlgebraPresentation, budget: Optional[int] = None):
        self.P = presentation
        self.budget = budget or _BUDGET[0]
        self.spent = 0
        self._depth = 0
        self._rank = presentation.rank
        self._parity = presentation.parity
        self._insert: Dict = {}
        self._bracket: Dict = {}
        self._negmode: Dict = {}
        self._expmode: Dict = {}
        self._deriv: Dict = {}
        self._factor_bracket: Dict = {}
        self._gen_bracket: Dict = {}
        self._schur: Dict = {}
        _ENGINES.add(self)

    # -- bookkeeping ------------------------------------------------------
    @contextmanager
    def metered(self):
        """Budgeted scope; the interpreter recursion limit is raised only while it is open"""
        outer = self._depth == 0
        if outer:
            self.spent = 0
            previous = sys.getrecursionlimit()
            sys.setrecursionlimit(max(previous, RECURSION_LIMIT))
        self._depth += 1
        try:
            yield self
        finally:
            self._depth -= 1
            if outer:
                sys.setrecursionlimit(previous)

    def _tick(self) -> None:
        self.spent += 1
        if self.spent > self.budget:
            raise BudgetExceeded(f"expansion budget of {self.budget} steps exhausted in {self.P.label}")

    def clear(self) -> None:
        for cache in (self._insert, self._bracket, self._negmode, self._expmode,
                      self._deriv, self._factor_bracket, self._gen_bracket, self._schur):
            cache.clear()

    def _key(self, factor) -> Tuple[int, int]:
        return (self._rank[factor[0]], factor[1])

    def mono_parity(self, mono: Monomial) -> int:
        return sum(self._parity[name] for name, _ in mono.factors) % 2

    def _sign(self, p: int, q: int) -> int:
        return -1 if p and q else 1

    # -- monomial assembly ------------------------------------------------
    def _is_sorted(self, factors) -> bool:
        for left, right in zip(factors, factors[1:]):
            kl, kr = self._key(left), self._key(right)
            if kl > kr or (kl == kr and self._parity[left[0]]):
                return False
        return True

    def build(self, factors: List[Tuple[str, int]], exponent: Optional[ExponentVector]) -> FieldExpr:
        """:f1 (f2 (... (fr e^exponent))): for an arbitrary factor order"""
        if exponent is not None and exponent.is_zero():
            exponent = None
        factors = tuple(factors)
        if self._is_sorted(factors):
            return FieldExpr.monomial(Monomial(factors, exponent))
        state = FieldExpr.monomial(Monomial((), exponent))
        for factor in reversed(factors):
            state = self.insert_expr(factor, state)
        return state

    def insert(self, factor, mono: Monomial) -> FieldExpr:
        """:factor mono: with factor = (name, order)"""
        factors = mono.factors
        if not factors:
            return FieldExpr.monomial(Monomial((factor,), mono.exponent))
        head = factors[0]
        kf, kh = self._key(factor), self._key(head)
        if kf < kh or (kf == kh and not self._parity[factor[0]]):
            return FieldExpr.monomial(Monomial((factor,) + factors, mono.exponent))
        cache_key = (factor, mono)
        cached = self._insert.get(cache_key)
        if cached is not None:
            return cached
        self._tick()
        acc: Acc = {}
        rest = Monomial(factors[1:], mono.exponent)
        if kf == kh:
            # odd factor twice: a_(-1) a_(-1) = 1/2 [a_(-1), a_(-1)]
            poly = self.factor_bracket(factor, factor)
            for i in range(poly.degree() + 1):
                field = poly.product(i)
                if field:
                    _add_expr(acc, self.mode_expr(field, -2 - i, FieldExpr.monomial(rest)),
                              Scalar(Fraction((-1) ** i, 2)))
        else:
            sign = self._sign(self._parity[factor[0]], self._parity[head[0]])
            inner = self.insert(factor, rest)
            _add_expr(acc, self.insert_expr(head, inner), Scalar(sign))
            poly = self.factor_bracket(factor, head)
            rest_expr = FieldExpr.monomial(rest)
            for i in range(poly.degree() + 1):
                field = poly.product(i)
                if field:
                    _add_expr(acc, self.mode_expr(field, -2 - i, rest_expr), Scalar((-1) ** i))
        result = FieldExpr(acc)
        self._insert[cache_key] = result
        return result

    def insert_expr(self, factor, expr: FieldExpr) -> FieldExpr:
        acc: Acc = {}
        for mono, coeff in expr.terms.items():
            _add_expr(acc, self.insert(factor, mono), coeff)
        return FieldExpr(acc)

    # -- derivatives ------------------------------------------------------
    def derivative_mono(self, mono: Monomial) -> FieldExpr:
        cached = self._deriv.get(mono)
        if cached is not None:
            return cached
        self._tick()
        acc: Acc = {}
        factors = list(mono.factors)
        for index, (name, order) in enumerate(factors):
            bumped = factors[:index] + [(name, order + 1)] + factors[index + 1:]
            _add_expr(acc, self.build(bumped, mono.exponent))
        if mono.exponent is not None:
            for direction, value in mono.exponent.items():
                if self.P.is_direction(direction):
                    _add_expr(acc, self.build(factors + [(direction, 0)], mono.exponent), value)
        result = FieldExpr(acc)
        self._deriv[mono] = result
        return result

    def derivative_expr(self, expr: FieldExpr, times: int = 1) -> FieldExpr:
        for _ in range(times):
            acc: Acc = {}
            for mono, coeff in expr.terms.items():
                _add_expr(acc, self.derivative_mono(mono), coeff)
            expr = FieldExpr(acc)
        return expr

    # -- generator brackets -----------------------------------------------
    def _skew(self, poly: LambdaPoly, sign: int) -> LambdaPoly:
        """[a_lambda b] = -sign * sum_j (-lambda - d)^j X_j  from  [b_lambda a] = sum_j lambda^j X_j"""
        acc: Dict[int, Acc] = {}
        for j, field in poly.raw.items():
            for i in range(j + 1):
                coeff = Scalar(-sign * comb(j, i) * (-1) ** j)
                _add_expr(acc.setdefault(j - i, {}), self.derivative_expr(field, i), coeff)
        return LambdaPoly({j: FieldExpr(terms) for j, terms in acc.items()})

    def gen_bracket(self, x: str, y: str) -> LambdaPoly:
        cached = self._gen_bracket.get((x, y))
        if cached is not None:
            return cached
        stored = self.P.brackets
        if (x, y) in stored:
            result = stored[(x, y)]
        elif (y, x) in stored:
            sign = self._sign(self._parity[x], self._parity[y])
            result = self._skew(stored[(y, x)], sign)
        elif (x, y) in self.P.gram:
            result = LambdaPoly({1: FieldExpr.identity(self.P.gram[(x, y)])})
        else:
            result = LambdaPoly()
        self._gen_bracket[(x, y)] = result
        return result

    def factor_bracket(self, left, right) -> LambdaPoly:
        """[d^p x_lambda d^q y] = (-lambda)^p (lambda + d)^q [x_lambda y]"""
        key = (left, right)
        cached = self._factor_bracket.get(key)
        if cached is not None:
            return cached
        (x, p), (y, q) = left, right
        base = self.gen_bracket(x, y)
        acc: Dict[int, Acc] = {}
        for j, field in base.raw.items():
            for i in range(q + 1):
                shifted = j + q - i + p
                coeff = Scalar(comb(q, i) * (-1) ** p)
                _add_expr(acc.setdefault(shifted, {}), self.derivative_expr(field, i), coeff)
        result = LambdaPoly({j: FieldExpr(terms) for j, terms in acc.items()})
        self._factor_bracket[key] = result
        return result

    # -- lattice vertex operators -----------------------------------------
    def integral_pairing(self, left: ExponentVector, right: Optional[ExponentVector]) -> int:
        if right is None:
            return 0
        value = self.P.exponent_pairing(left, right)
        shift = value.integer_part()
        if shift is None:
            raise PairingError(f"generalized exponent unsupported: pairing of {left} and {right} is {value}")
        return shift

    def schur(self, mu: ExponentVector, degree: int) -> Dict[Tuple, Scalar]:
        """Coefficient of t^degree in exp(sum_a h_(-a) t^a / a), h = current of mu"""
        key = (mu, degree)
        cached = self._schur.get(key)
        if cached is not None:
            return cached
        if degree == 0:
            result = {(): ONE}
        else:
            acc: Dict[Tuple, Scalar] = {}
            for a in range(1, degree + 1):
                lower = self.schur(mu, degree - a)
                for direction, value in mu.items():
                    if not self.P.is_direction(direction):
                        continue
                    coeff = value * Fraction(1, factorial(a - 1) * degree)
                    factor = (direction, a - 1)
                    for word, c in lower.items():
                        merged = tuple(sorted(word + (factor,), key=self._key))
                        acc[merged] = acc.get(merged, ZERO) + c * coeff
            result = {word: c for word, c in acc.items() if c}
        self._schur[key] = result
        return result

    def exp_mode(self, mu: ExponentVector, q: int, mono: Monomial) -> FieldExpr:
        """e^mu_(q) applied to a monomial state"""
        key = (mu, q, mono)
        cached = self._expmode.get(key)
        if cached is not None:
            return cached
        self._tick()
        shift = self.integral_pairing(mu, mono.exponent)
        total = mu if mono.exponent is None else mu + mono.exponent
        exponent = None if total.is_zero() else total
        absorbing = []
        for index, (name, order) in enumerate(mono.factors):
            g = self.P.pairing(name, mu)
            if g:
                absorbing.append((index, order, g))
        acc: Acc = {}
        for chosen in itertools.product((False, True), repeat=len(absorbing)):
            taken = [item for item, flag in zip(absorbing, chosen) if flag]
            degree = sum(order + 1 for _, order, _ in taken) - q - 1 - shift
            if degree < 0:
                continue
            coeff = ONE
            for _, order, g in taken:
                coeff = coeff * (-g) * factorial(order)
            dropped = {index for index, _, _ in taken}
            remaining = tuple(f for index, f in enumerate(mono.factors) if index not in dropped)
            for word, c in self.schur(mu, degree).items():
                merged = tuple(sorted(remaining + word, key=self._key))
                _add(acc, Monomial(merged, exponent), coeff * c)
        result = FieldExpr(acc)
        self._expmode[key] = result
        return result

    # -- lambda-brackets --------------------------------------------------
    def bracket_mono(self, left: Monomial, right: Monomial) -> LambdaPoly:
        key = (left, right)
        cached = self._bracket.get(key)
        if cached is not None:
            return cached
        self._tick()
        result = self._bracket_uncached(left, right)
        self._bracket[key] = result
        return result

    def _bracket_uncached(self, left: Monomial, right: Monomial) -> LambdaPoly:
        if left.is_identity() or right.is_identity():
            return LambdaPoly()
        if not left.factors:
            mu = left.exponent
            shift = self.integral_pairing(mu, right.exponent)
            top = sum(order + 1 for name, order in right.factors if self.P.pairing(name, mu)) - 1 - shift
            return LambdaPoly({j: self.exp_mode(mu, j, right) * Fraction(1, factorial(j))
                               for j in range(top + 1)})
        if right.pieces() >= 2:
            return self._right_wick(left, right)
        if left.pieces() == 1:
            factor = left.factors[0]
            if right.factors:
                return self.factor_bracket(factor, right.factors[0])
            name, order = factor
            g = self.P.pairing(name, right.exponent)
            if not g:
                return LambdaPoly()
            return LambdaPoly({order: FieldExpr.vertex(right.exponent, g * (-1) ** order)})
        sign = self._sign(self.mono_parity(left), self.mono_parity(right))
        return self._skew(self.bracket_mono(right, left), sign)

    def _right_wick(self, left: Monomial, right: Monomial) -> LambdaPoly:
        """[a_lambda :B C:] = :[a_lambda B] C: + p(a,B) :B [a_lambda C]: + int_0^lambda [[a_lambda B]_mu C] dmu"""
        head = right.factors[0]
        head_mono = Monomial((head,), None)
        rest = FieldExpr.monomial(Monomial(right.factors[1:], right.exponent))
        acc: Dict[int, Acc] = {}
        with_head = self.bracket_mono(left, head_mono)
        for j, field in with_head.raw.items():
            _add_expr(acc.setdefault(j, {}), self.nprod_expr(field, rest))
            for i, inner in self.bracket_expr(field, rest).raw.items():
                _add_expr(acc.setdefault(j + i + 1, {}), inner, Scalar(Fraction(1, i + 1)))
        sign = self._sign(self.mono_parity(left), self._parity[head[0]])
        for j, field in self.bracket_expr(FieldExpr.monomial(left), rest).raw.items():
            _add_expr(acc.setdefault(j, {}), self.insert_expr(head, field), Scalar(sign))
        return LambdaPoly({j: FieldExpr(terms) for j, terms in acc.items()})

    def bracket_expr(self, a: FieldExpr, b: FieldExpr) -> LambdaPoly:
        acc: Dict[int, Acc] = {}
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                for j, field in self.bracket_mono(ma, mb).raw.items():
                    _add_expr(acc.setdefault(j, {}), field, ca * cb)
        return LambdaPoly({j: FieldExpr(terms) for j, terms in acc.items()})

    # -- modes ------------------------------------------------------------
    def mode_mono(self, left: Monomial, q: int, right: Monomial) -> FieldExpr:
        if q >= 0:
            return self.bracket_mono(left, right).product(q)
        return self.negative_mode(left, q, right)

    def negative_mode(self, left: Monomial, q: int, right: Monomial) -> FieldExpr:
        if left.is_identity():
            return FieldExpr.monomial(right) if q == -1 else FieldExpr()
        if right.is_identity():
            return self.derivative_expr(FieldExpr.monomial(left), -q - 1) * Fraction(1, factorial(-q - 1))
        if not left.factors:
            return self.exp_mode(left.exponent, q, right)
        if left.pieces() == 1:
            name, order = left.factors[0]
            n = order - q
            coeff = Fraction((-1) ** order * _falling(q, order), factorial(n - 1))
            return self.insert((name, n - 1), right) * coeff
        key = (left, q, right)
        cached = self._negmode.get(key)
        if cached is not None:
            return cached
        self._tick()
        head = Monomial((left.factors[0],), None)
        rest = Monomial(left.factors[1:], left.exponent)
        rest_expr = FieldExpr.monomial(rest)
        head_expr = FieldExpr.monomial(head)
        right_expr = FieldExpr.monomial(right)
        acc: Acc = {}
        top = -q + self.bracket_mono(rest, right).degree()
        for j in range(top + 1):
            inner = self.mode_mono(rest, q + j, right)
            if inner:
                _add_expr(acc, self.mode_expr(head_expr, -1 - j, inner))
        sign = self._sign(self.mono_parity(head), self.mono_parity(rest))
        with_head = self.bracket_mono(head, right)
        for j in range(with_head.degree() + 1):
            inner = with_head.product(j)
            if inner:
                _add_expr(acc, self.mode_expr(rest_expr, q - 1 - j, inner), Scalar(sign))
        result = FieldExpr(acc)
        self._negmode[key] = result
        return result

    def mode_expr(self, a: FieldExpr, q: int, b: FieldExpr) -> FieldExpr:
        acc: Acc = {}
        for ma, ca in a.terms.items():
            for mb, cb in b.terms.items():
                _add_expr(acc, self.mode_mono(ma, q, mb), ca * cb)
        return FieldExpr(acc)

    def nprod_expr(self, a: FieldExpr, b: FieldExpr) -> FieldExpr:
        return self.mode_expr(a, -1, b)

    # -- canonicalization of raw trees ------------------------------------
    def canonicalize(self, node: Node, rng: Optional[random.Random] = None) -> FieldExpr:
        if isinstance(node, One):
            return FieldExpr.identity()
        if isinstance(node, Gen):
            if not self.P.has(node.name):
                raise PresentationError(f"unknown generator {node.name!r} in {self.P.label}")
            return FieldExpr.generator(node.name)
        if isinstance(node, Vop):
            expr = FieldExpr.vertex(node.exponent)
            self.P.check_expr(expr)
            return expr
        if isinstance(node, Lin):
            terms = list(node.terms)
            if rng is not None:
                rng.shuffle(terms)
            acc: Acc = {}
            for coeff, child in terms:
                _add_expr(acc, self.canonicalize(child, rng), coeff)
            return FieldExpr(acc)
        if isinstance(node, Der):
            if node.order < 0:
                raise PresentationError("negative derivative order")
            if rng is not None and node.order > 0 and isinstance(node.body, NO) and rng.random() < 0.5:
                left, right = node.body.left, node.body.right
                first = Der(node.order - 1, NO(Der(1, left), right))
                second = Der(node.order - 1, NO(left, Der(1, right)))
                return self.canonicalize(first, rng) + self.canonicalize(second, rng)
            return self.derivative_expr(self.canonicalize(node.body, rng), node.order)
        if isinstance(node, NO):
            return self._canonical_product(node, rng)
        raise PresentationError(f"not an expression node: {node!r}")

    def _canonical_product(self, node: NO, rng: Optional[random.Random]) -> FieldExpr:
        route = rng.randrange(3) if rng is not None else 0
        if route == 1 and isinstance(node.left, NO):
            a = self.canonicalize(node.left.left, rng)
            b = self.canonicalize(node.left.right, rng)
            c = self.canonicalize(node.right, rng)
            if expr_parity(self.P, a) is not None and expr_parity(self.P, b) is not None:
                return self.borcherds_product(a, b, c)
        if route == 2 and isinstance(node.right, NO):
            a = self.canonicalize(node.left, rng)
            b = self.canonicalize(node.right.left, rng)
            c = self.canonicalize(node.right.right, rng)
            pa, pb = expr_parity(self.P, a), expr_parity(self.P, b)
            if pa is not None and pb is not None:
                acc: Acc = {}
                _add_expr(acc, self.nprod_expr(b, self.nprod_expr(a, c)), Scalar(self._sign(pa, pb)))
                poly = self.bracket_expr(a, b)
                for i in range(poly.degree() + 1):
                    _add_expr(acc, self.mode_expr(poly.product(i), -2 - i, c), Scalar((-1) ** i))
                return FieldExpr(acc)
        left = self.canonicalize(node.left, rng)
        right = self.canonicalize(node.right, rng)
        return self.nprod_expr(left, right)

    def borcherds_product(self, a: FieldExpr, b: FieldExpr, c: FieldExpr) -> FieldExpr:
        """:(:a b:) c: expanded as sum_j a_(-1-j) b_(-1+j) c + p sum_j b_(-2-j) a_(j) c"""
        acc: Acc = {}
        top = self.bracket_expr(b, c).degree() + 1
        for j in range(top + 1):
            inner = self.mode_expr(b, -1 + j, c)
            if inner:
                _add_expr(acc, self.mode_expr(a, -1 - j, inner))
        sign = Scalar(self._sign(expr_parity(self.P, a), expr_parity(self.P, b)))
        with_a = self.bracket_expr(a, c)
        for j in range(with_a.degree() + 1):
            inner = with_a.product(j)
            if inner:
                _add_expr(acc, self.mode_expr(b, -2 - j, inner), sign)
        return FieldExpr(acc)


# -- module-level API ------------------------------------------------------
def expr_parity(P: AlgebraPresentation, expr: FieldExpr) -> Optional[int]:
    """Common parity of all terms, None for mixed expressions (zero counts as even)"""
    parities = {sum(P.parity[name] for name, _ in mono.factors) % 2 for mono in expr.terms}
    if len(parities) > 1:
        return None
    return parities.pop() if parities else 0


def coerce_field(P: AlgebraPresentation, value: FieldLike) -> FieldExpr:
    if isinstance(value, str):
        return canonicalize(P, parse_field(value))
    P.check_expr(value)
    return value


def canonicalize(P: AlgebraPresentation, node: Union[Node, str], rng: Optional[random.Random] = None) -> FieldExpr:
    if isinstance(node, str):
        node = parse_field(node)
    engine = P.engine
    with engine.metered():
        return engine.canonicalize(node, rng)


def lambda_bracket(P: AlgebraPresentation, a: FieldLike, b: FieldLike) -> LambdaPoly:
    a, b = coerce_field(P, a), coerce_field(P, b)
    engine = P.engine
    with engine.metered():
        return engine.bracket_expr(a, b)


def ope(P: AlgebraPresentation, a: FieldLike, b: FieldLike) -> OPEResult:
    return OPEResult(poles=lambda_bracket(P, a, b).poles())


def nth_product(P: AlgebraPresentation, a: FieldLike, b: FieldLike, j: int) -> FieldExpr:
    a, b = coerce_field(P, a), coerce_field(P, b)
    engine = P.engine
    with engine.metered():
        return engine.mode_expr(a, j, b)


def normal_order(P: AlgebraPresentation, a: FieldLike, b: FieldLike) -> FieldExpr:
    return nth_product(P, a, b, -1)


def derivative(P: AlgebraPresentation, a: FieldLike, times: int = 1) -> FieldExpr:
    a = coerce_field(P, a)
    engine = P.engine
    with engine.metered():
        return engine.derivative_expr(a, times)


def vop_product(P: AlgebraPresentation, a: FieldLike, b: FieldLike) -> OPEResult:
    """Product of two exponential-dressed fields

    The (z-w)^<lambda,mu> factor is absorbed into integer pole orders; the
    shift and the regular product are reported alongside the poles.
    """
    a, b = coerce_field(P, a), coerce_field(P, b)
    engine = P.engine
    shifts = set()
    for ea in a.exponents():
        for eb in b.exponents():
            if ea is not None and eb is not None:
                shifts.add(engine.integral_pairing(ea, eb))
    with engine.metered():
        poles = engine.bracket_expr(a, b).poles()
        regular = engine.nprod_expr(a, b)
    shift = Scalar(shifts.pop()) if len(shifts) == 1 else None
    return OPEResult(poles=poles, shift=shift, regular=regular)


def zero_mode_action(P: AlgebraPresentation, s: FieldLike, x: FieldLike) -> FieldExpr:
    """s_(0) x = (-1)^(|s||x|) sum_j (-1)^(j+1) d^j (x_(j) s) / j!"""
    s, x = coerce_field(P, s), coerce_field(P, x)
    exponents = s.exponents()
    if None in exponents or len(exponents) != 1:
        raise PresentationError("a screening field carries one common nonzero exponent")
    engine = P.engine
    acc: Acc = {}
    with engine.metered():
        for ms, cs in s.terms.items():
            ps = engine.mono_parity(ms)
            for mx, cx in x.terms.items():
                sign = engine._sign(ps, engine.mono_parity(mx))
                for j, field in engine.bracket_mono(mx, ms).raw.items():
                    _add_expr(acc, engine.derivative_expr(field, j), cs * cx * Scalar(sign * (-1) ** (j + 1)))
    return FieldExpr(acc)


def _exponent_image(source: ExponentVector, images: Mapping[str, FieldExpr],
                    target: AlgebraPresentation) -> Optional[ExponentVector]:
    coefficients: Dict[str, Scalar] = {}
    for direction, value in source.items():
        image = images.get(direction)
        if image is None:
            image = FieldExpr.generator(direction)
        for mono, coeff in image.terms.items():
            if mono.exponent is not None or len(mono.factors) != 1 or mono.factors[0][1] != 0 \
                    or not target.is_direction(mono.factors[0][0]):
                raise PairingError(f"exponent direction {direction!r} does not map to a combination of currents")
            name = mono.factors[0][0]
            coefficients[name] = coefficients.get(name, ZERO) + coeff * value
    result = ExponentVector(coefficients)
    return None if result.is_zero() else result


def substitute(expr: FieldExpr, table: Mapping[str, FieldExpr], target: AlgebraPresentation) -> FieldExpr:
    """Image of expr under the homomorphism given on generators by table

    Generators missing from the table map to the generator of the same name
    in the target presentation.
    """
    engine = target.engine
    acc: Acc = {}
    with engine.metered():
        for mono, coeff in expr.terms.items():
            if mono.exponent is not None:
                exponent = _exponent_image(mono.exponent, table, target)
                state = FieldExpr.vertex(exponent) if exponent is not None else FieldExpr.identity()
            else:
                state = FieldExpr.identity()
            for name, order in reversed(mono.factors):
                image = table.get(name)
                if image is None:
                    if not target.has(name):
                        raise PresentationError(f"no image for generator {name!r} in {target.label}")
                    image = FieldExpr.generator(name)
                state = engine.nprod_expr(engine.derivative_expr(image, order), state)
            _add_expr(acc, state, coeff)
    return FieldExpr(acc)


def clear_memos() -> None:
    """Drop the memo tables of every live engine"""
    for engine in list(_ENGINES):
        engine.clear()


def set_budget(budget: int) -> None:
    """Expansion budget for every engine, live or created later"""
    _BUDGET[0] = budget
    for engine in list(_ENGINES):
        engine.budget = budget
