#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Brute-force mode algebra for free presentations

States of the vacuum module are words of creation modes x_(-n) applied to
|0>.  Composite fields act through their fully normally ordered mode
expansion, and generator modes act by the (anti)commutators read off the
constant generator brackets.  Nothing here goes through the lambda-bracket
engine, so it serves as an independent check of it.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial
from typing import Dict, Iterator, List, Optional, Tuple

from errors import OracleTruncationError, PresentationError
from presentation import AlgebraPresentation, FieldExpr, Monomial
from scalars import ONE, ZERO, Scalar

Word = Tuple[Tuple[str, int], ...]
State = Dict[Word, Scalar]


@dataclass
class OracleResult:
    poles: Dict[int, FieldExpr]
    truncation: int
    commutators: Dict[Tuple[int, int], FieldExpr] = field(default_factory=dict)

    def pole(self, n: int) -> FieldExpr:
        return self.poles.get(n, FieldExpr())


def _falling(q: int, p: int) -> int:
    value = 1
    for i in range(p):
        value *= q - i
    return value


class FockSpace:
    """Vacuum module of a free presentation, modes acting on words"""

    def __init__(self, P: AlgebraPresentation):
        if not P.is_free():
            raise PresentationError(f"{P.label} is not a free presentation")
        self.P = P
        self.rank = P.rank
        self.parity = P.parity
        self.constants: Dict[Tuple[str, str], Dict[int, Scalar]] = {}
        for x in P.names():
            for y in P.names():
                table = self._constant_products(x, y)
                if table:
                    self.constants[(x, y)] = table
        self.max_pole = max((max(t) + 1 for t in self.constants.values()), default=0)

    def _constant_products(self, x: str, y: str) -> Dict[int, Scalar]:
        """x_(i) y as scalars, i >= 0"""
        stored = self.P.brackets
        raw: Dict[int, Scalar] = {}
        if (x, y) in stored:
            for j, expr in stored[(x, y)].raw.items():
                raw[j] = expr.scalar_value()
        elif (y, x) in stored:
            sign = -1 if self.parity[x] and self.parity[y] else 1
            for j, expr in stored[(y, x)].raw.items():
                raw[j] = expr.scalar_value() * (-sign * (-1) ** j)
        elif (x, y) in self.P.gram:
            raw[1] = self.P.gram[(x, y)]
        return {j: value * factorial(j) for j, value in raw.items() if value}

    def _key(self, item) -> Tuple[int, int]:
        return (self.rank[item[0]], item[1])

    # -- generator modes --------------------------------------------------
    def create(self, name: str, n: int, state: State) -> State:
        """x_(-n) with n >= 1"""
        odd = self.parity[name]
        key = (self.rank[name], n)
        result: State = {}
        for word, coeff in state.items():
            if odd and (name, n) in word:
                continue
            position = 0
            odd_before = 0
            while position < len(word) and self._key(word[position]) < key:
                odd_before += self.parity[word[position][0]]
                position += 1
            sign = -1 if odd and odd_before % 2 else 1
            new_word = word[:position] + ((name, n),) + word[position:]
            result[new_word] = result.get(new_word, ZERO) + coeff * sign
        return {w: c for w, c in result.items() if c}

    def annihilate(self, name: str, m: int, state: State) -> State:
        """x_(m) with m >= 0"""
        odd = self.parity[name]
        result: State = {}
        for word, coeff in state.items():
            odd_before = 0
            for t, (y, n) in enumerate(word):
                i = m - n + 1
                table = self.constants.get((name, y))
                if table and 0 <= i <= m and i in table:
                    sign = -1 if odd and odd_before % 2 else 1
                    value = table[i] * comb(m, i) * sign
                    new_word = word[:t] + word[t + 1:]
                    result[new_word] = result.get(new_word, ZERO) + coeff * value
                odd_before += self.parity[y]
        return {w: c for w, c in result.items() if c}

    def apply_generator(self, name: str, q: int, state: State) -> State:
        return self.create(name, -q, state) if q < 0 else self.annihilate(name, q, state)

    # -- composite fields -------------------------------------------------
    @staticmethod
    def depth(state: State) -> int:
        return max((sum(n for _, n in word) for word in state), default=0)

    def annihilation_bound(self, state: State) -> int:
        return self.depth(state) + self.max_pole - 2

    def _index_tuples(self, count: int, total: int, top: int) -> Iterator[Tuple[int, ...]]:
        """Integer tuples with entries <= top summing to total"""
        if count == 0:
            if total == 0:
                yield ()
            return
        if count == 1:
            if total <= top:
                yield (total,)
            return
        low = total - (count - 1) * top
        for first in range(low, top + 1):
            for tail in self._index_tuples(count - 1, total - first, top):
                yield (first,) + tail

    def apply_monomial_mode(self, mono: Monomial, j: int, state: State) -> State:
        """mono_(j) on a state, mono an exponential-free canonical monomial"""
        if mono.exponent is not None:
            raise PresentationError("the mode oracle does not handle vertex operators")
        factors = mono.factors
        if not factors:
            return dict(state) if j == -1 else {}
        r = len(factors)
        top = max(self.annihilation_bound(state), 0)
        target = j + 1 - r - sum(order for _, order in factors)
        result: State = {}
        for indices in self._index_tuples(r, target, top):
            coeff = ONE
            for (name, order), q in zip(factors, indices):
                coeff = coeff * ((-1) ** order * _falling(q + order, order))
            if not coeff:
                continue
            # creation modes to the left, both groups keep their order
            creators = [(f, q) for f, q in zip(factors, indices) if q < 0]
            annihilators = [(f, q) for f, q in zip(factors, indices) if q >= 0]
            swaps = 0
            odd_creators_after = 0
            for position in range(r - 1, -1, -1):
                (name, _), q = factors[position], indices[position]
                if q < 0:
                    odd_creators_after += self.parity[name]
                elif self.parity[name]:
                    swaps += odd_creators_after
            if swaps % 2:
                coeff = -coeff
            current = {word: c * coeff for word, c in state.items()}
            for (name, _), q in reversed(annihilators):
                current = self.annihilate(name, q, current)
                if not current:
                    break
            for (name, _), q in reversed(creators):
                if not current:
                    break
                current = self.create(name, -q, current)
            for word, c in current.items():
                result[word] = result.get(word, ZERO) + c
        return {w: c for w, c in result.items() if c}

    def apply_field_mode(self, expr: FieldExpr, j: int, state: State) -> State:
        result: State = {}
        for mono, coeff in expr.terms.items():
            for word, c in self.apply_monomial_mode(mono, j, state).items():
                result[word] = result.get(word, ZERO) + c * coeff
        return {w: c for w, c in result.items() if c}

    # -- conversions ------------------------------------------------------
    def state_of(self, expr: FieldExpr) -> State:
        result: State = {}
        for mono, coeff in expr.terms.items():
            if mono.exponent is not None:
                raise PresentationError("the mode oracle does not handle vertex operators")
            current: State = {(): coeff}
            for name, order in reversed(mono.factors):
                current = self.create(name, order + 1, current)
                current = {w: c * factorial(order) for w, c in current.items()}
            for word, c in current.items():
                result[word] = result.get(word, ZERO) + c
        return {w: c for w, c in result.items() if c}

    @staticmethod
    def field_of(state: State) -> FieldExpr:
        terms = {}
        for word, coeff in state.items():
            scale = Fraction(1)
            for _, n in word:
                scale /= factorial(n - 1)
            mono = Monomial(tuple((name, n - 1) for name, n in word), None)
            terms[mono] = terms.get(mono, ZERO) + coeff * scale
        return FieldExpr(terms)


def _depth_of(expr: FieldExpr) -> int:
    return max((sum(order + 1 for _, order in mono.factors) for mono in expr.terms), default=0)


def mode_oracle(P: AlgebraPresentation, a: FieldExpr, b: FieldExpr, truncation: int,
                with_table: bool = False) -> OracleResult:
    """OPE poles of a(z) b(w) recomputed from explicit mode algebra"""
    space = FockSpace(P)
    vacuum_b = space.state_of(b)
    bound = space.annihilation_bound(vacuum_b)
    if bound > truncation:
        raise OracleTruncationError(
            f"truncation {truncation} too small: annihilation modes up to {bound} are needed")
    poles: Dict[int, FieldExpr] = {}
    top = _depth_of(a) + _depth_of(b) + space.max_pole
    for j in range(top + 1):
        value = space.field_of(space.apply_field_mode(a, j, vacuum_b))
        if value:
            poles[j + 1] = value
    result = OracleResult(poles=poles, truncation=truncation)
    if with_table:
        result.commutators = commutator_table(P, a, b, truncation, space)
    return result


def commutator_table(P: AlgebraPresentation, a: FieldExpr, b: FieldExpr, truncation: int,
                     space: Optional[FockSpace] = None) -> Dict[Tuple[int, int], FieldExpr]:
    """[a_(m), b_(n)]|0> for |m|, |n| <= truncation"""
    space = space or FockSpace(P)
    parity_a = {sum(P.parity[name] for name, _ in mono.factors) % 2 for mono in a.terms}
    parity_b = {sum(P.parity[name] for name, _ in mono.factors) % 2 for mono in b.terms}
    odd = parity_a == {1} and parity_b == {1}
    vacuum: State = {(): ONE}
    table: Dict[Tuple[int, int], FieldExpr] = {}
    for m in range(-truncation, truncation + 1):
        a_vac = space.apply_field_mode(a, m, vacuum)
        for n in range(-truncation, truncation + 1):
            b_vac = space.apply_field_mode(b, n, vacuum)
            first = space.apply_field_mode(a, m, b_vac)
            second = space.apply_field_mode(b, n, a_vac)
            combined = dict(first)
            for word, c in second.items():
                combined[word] = combined.get(word, ZERO) + (c if odd else -c)
            table[(m, n)] = space.field_of({w: c for w, c in combined.items() if c})
    return table
