#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
sl(n+1) root data from elementary matrices

Conventions: e[i,j] = M_{i,j+1}, f[i,j] = M_{j+1,i} for the positive root
alpha_{i,j} = alpha_i + ... + alpha_j, and h[t] = M_{t,t} - M_{t+1,t+1}.
The invariant form is the trace form.  Weights are written in the
simple-root basis.
"""

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, List, NamedTuple, Tuple

from sympy import Matrix, Rational

from errors import GradingError, RangeError

Sparse = Dict[Tuple[int, int], Fraction]


class BasisElement(NamedTuple):
    kind: str  # e | h | f
    i: int
    j: int

    def __str__(self) -> str:
        if self.kind == "h":
            return f"h[{self.i}]"
        return f"{self.kind}[{self.i},{self.j}]"

    @property
    def root(self) -> Tuple[int, int]:
        return (self.i, self.j)


def e(i: int, j: int = None) -> BasisElement:
    return BasisElement("e", i, i if j is None else j)


def f(i: int, j: int = None) -> BasisElement:
    return BasisElement("f", i, i if j is None else j)


def h(i: int) -> BasisElement:
    return BasisElement("h", i, i)


_BASIS_TEXT = re.compile(r"^\s*([ehf])\s*(?:\[\s*(\d+)\s*(?:,\s*(\d+)\s*)?\]|(\d+))\s*$")


def parse_basis(text: str) -> BasisElement:
    """'e[1,2]', 'f3', 'h[2]' -> BasisElement"""
    match = _BASIS_TEXT.match(text)
    if not match:
        raise RangeError(f"not a basis element: {text!r}")
    kind, first, second, plain = match.groups()
    i = int(first or plain)
    j = int(second) if second else i
    return BasisElement(kind, i, j)


def _check_rank(n: int) -> None:
    if n < 1:
        raise RangeError(f"rank must be positive, got {n}")


def check_element(n: int, x: BasisElement) -> None:
    _check_rank(n)
    if x.kind not in ("e", "h", "f"):
        raise RangeError(f"unknown basis kind {x.kind!r}")
    if not (1 <= x.i <= x.j <= n) or (x.kind == "h" and x.i != x.j):
        raise RangeError(f"{x} is not a basis element of sl({n + 1})")


def positive_roots(n: int) -> List[Tuple[int, int]]:
    _check_rank(n)
    return [(i, j) for i in range(1, n + 1) for j in range(i, n + 1)]


def root_vector(n: int, i: int, j: int) -> Tuple[int, ...]:
    """Simple-root coefficients of alpha_{i,j}"""
    if not 1 <= i <= j <= n:
        raise RangeError(f"alpha[{i},{j}] is not a positive root of sl({n + 1})")
    return tuple(1 if i <= t <= j else 0 for t in range(1, n + 1))


def highest_root(n: int) -> Tuple[int, int]:
    _check_rank(n)
    return (1, n)


def basis(n: int) -> List[BasisElement]:
    roots = positive_roots(n)
    return [e(i, j) for i, j in roots] + [h(t) for t in range(1, n + 1)] + [f(i, j) for i, j in roots]


@lru_cache(maxsize=None)
def cartan_matrix(n: int) -> Tuple[Tuple[int, ...], ...]:
    _check_rank(n)
    return tuple(tuple(2 if a == b else (-1 if abs(a - b) == 1 else 0) for b in range(1, n + 1))
                 for a in range(1, n + 1))


@lru_cache(maxsize=None)
def inverse_cartan(n: int) -> Tuple[Tuple[Fraction, ...], ...]:
    """C^{-1}_{ij} = min(i,j) (n+1-max(i,j)) / (n+1)"""
    _check_rank(n)
    return tuple(tuple(Fraction(min(i, j) * (n + 1 - max(i, j)), n + 1) for j in range(1, n + 1))
                 for i in range(1, n + 1))


def fundamental_weight(n: int, i: int) -> Tuple[Fraction, ...]:
    if not 1 <= i <= n:
        raise RangeError(f"omega_{i} does not exist for sl({n + 1})")
    return inverse_cartan(n)[i - 1]


def weight_inner(n: int, u, v) -> Fraction:
    """Pairing of two weights given in the simple-root basis"""
    c = cartan_matrix(n)
    return sum((Fraction(u[a]) * c[a][b] * Fraction(v[b]) for a in range(n) for b in range(n)), Fraction(0))


# -- matrices --------------------------------------------------------------
def as_matrix(n: int, x: BasisElement) -> Sparse:
    check_element(n, x)
    if x.kind == "e":
        return {(x.i, x.j + 1): Fraction(1)}
    if x.kind == "f":
        return {(x.j + 1, x.i): Fraction(1)}
    return {(x.i, x.i): Fraction(1), (x.i + 1, x.i + 1): Fraction(-1)}


def combination_matrix(n: int, combo: Dict[BasisElement, Fraction]) -> Sparse:
    result: Sparse = {}
    for x, coeff in combo.items():
        for position, value in as_matrix(n, x).items():
            result[position] = result.get(position, Fraction(0)) + value * coeff
    return {p: v for p, v in result.items() if v}


def _multiply(a: Sparse, b: Sparse) -> Sparse:
    result: Sparse = {}
    for (r, s), u in a.items():
        for (s2, c), v in b.items():
            if s == s2:
                result[(r, c)] = result.get((r, c), Fraction(0)) + u * v
    return {p: v for p, v in result.items() if v}


def commutator(a: Sparse, b: Sparse) -> Sparse:
    ab, ba = _multiply(a, b), _multiply(b, a)
    result = dict(ab)
    for p, v in ba.items():
        result[p] = result.get(p, Fraction(0)) - v
    return {p: v for p, v in result.items() if v}


def expand(n: int, matrix: Sparse) -> Dict[BasisElement, Fraction]:
    """Traceless matrix -> Cartan-Weyl coefficients"""
    result: Dict[BasisElement, Fraction] = {}
    diagonal = [Fraction(0)] * (n + 2)
    for (r, c), value in matrix.items():
        if r < c:
            result[e(r, c - 1)] = value
        elif r > c:
            result[f(c, r - 1)] = value
        else:
            diagonal[r] = value
    running = Fraction(0)
    for t in range(1, n + 1):
        running += diagonal[t]
        if running:
            result[h(t)] = running
    if running + diagonal[n + 1] != 0:
        raise GradingError("matrix is not traceless")
    return result


def structure_constants(n: int, a: BasisElement, b: BasisElement) -> Dict[BasisElement, Fraction]:
    """[a, b] expanded in the Cartan-Weyl basis"""
    return expand(n, commutator(as_matrix(n, a), as_matrix(n, b)))


def inner(n: int, a: BasisElement, b: BasisElement) -> Fraction:
    """Normalized invariant form; equal to the trace form for sl(n+1)"""
    product = _multiply(as_matrix(n, a), as_matrix(n, b))
    return sum((v for (r, c), v in product.items() if r == c), Fraction(0))


def inner_combination(n: int, a: Dict[BasisElement, Fraction], b: Dict[BasisElement, Fraction]) -> Fraction:
    return sum((ca * cb * inner(n, x, y) for x, ca in a.items() for y, cb in b.items()), Fraction(0))


def dual_basis(n: int) -> Dict[BasisElement, Dict[BasisElement, Fraction]]:
    """x -> x^* with inner(x, y^*) = delta_{xy}"""
    dual: Dict[BasisElement, Dict[BasisElement, Fraction]] = {}
    inv = inverse_cartan(n)
    for i, j in positive_roots(n):
        dual[e(i, j)] = {f(i, j): Fraction(1)}
        dual[f(i, j)] = {e(i, j): Fraction(1)}
    for a in range(1, n + 1):
        dual[h(a)] = {h(b): inv[a - 1][b - 1] for b in range(1, n + 1) if inv[a - 1][b - 1]}
    return dual


# -- internal and exposed roots --------------------------------------------
def classify_root(n: int, root: Tuple[int, int], upper: int = None) -> str:
    """'internal' when alpha_{i,j} avoids alpha_1 and alpha_upper, else 'exposed'

    With upper = m-1 this is the classification of (Delta_0)^+ relative to
    theta_0 = alpha_{1,m-1}.
    """
    upper = n if upper is None else upper
    i, j = root
    if not 1 <= i <= j <= upper:
        raise RangeError(f"alpha[{i},{j}] is outside the root system of rank {upper}")
    if (i, j) == (1, upper):
        raise RangeError("the highest root is neither internal nor exposed")
    return "internal" if 1 < i and j < upper else "exposed"


# -- hook nilpotents and good gradings -------------------------------------
def _check_hook(n: int, m: int) -> None:
    _check_rank(n)
    if not 1 <= m <= n + 1:
        raise RangeError(f"hook index m must satisfy 1 <= m <= {n + 1}, got {m}")


@dataclass(frozen=True)
class NilpotentRep:
    n: int
    m: int
    variant: str
    terms: Tuple[Tuple[BasisElement, int], ...]

    @property
    def matrix(self) -> Tuple[Tuple[int, ...], ...]:
        sparse = combination_matrix(self.n, dict(self.terms))
        size = self.n + 1
        return tuple(tuple(int(sparse.get((r, c), 0)) for c in range(1, size + 1)) for r in range(1, size + 1))

    def as_combination(self) -> Dict[BasisElement, Fraction]:
        return {x: Fraction(c) for x, c in self.terms}


def hook_nilpotent(n: int, m: int, variant: str = "standard") -> NilpotentRep:
    _check_hook(n, m)
    if variant not in ("standard", "bar"):
        raise RangeError(f"unknown variant {variant!r}")
    if variant == "standard" or m > n:
        terms = [(f(i), 1) for i in range(m, n + 1)]
    else:
        terms = [(f(1, m), 1)] + [(f(i), 1) for i in range(m + 1, n + 1)]
    return NilpotentRep(n, m, variant, tuple(terms))


@dataclass(frozen=True)
class GoodGrading:
    n: int
    m: int
    grade: Tuple[int, ...]

    def degree(self, x: BasisElement) -> int:
        weight = sum(self.grade[t - 1] for t in range(x.i, x.j + 1))
        if x.kind == "e":
            return weight
        if x.kind == "f":
            return -weight
        return 0

    def zero_roots(self) -> List[Tuple[int, int]]:
        return [(i, j) for i, j in positive_roots(self.n) if sum(self.grade[i - 1:j]) == 0]


def good_grading(n: int, m: int) -> GoodGrading:
    _check_hook(n, m)
    return GoodGrading(n, m, tuple(0 if i <= m - 1 else 1 for i in range(1, n + 1)))


def grading_element(n: int, m: int) -> Dict[BasisElement, Fraction]:
    """x in the Cartan subalgebra with alpha_i(x) = grade_i, written in the h basis"""
    grading = good_grading(n, m)
    inv = inverse_cartan(n)
    x: Dict[BasisElement, Fraction] = {}
    for i in range(1, n + 1):
        if grading.grade[i - 1]:
            for j in range(1, n + 1):
                x[h(j)] = x.get(h(j), Fraction(0)) + grading.grade[i - 1] * inv[i - 1][j - 1]
    return {k: v for k, v in x.items() if v}


def _ad_matrix(n: int, element: Dict[BasisElement, Fraction], source: List[BasisElement],
               target: List[BasisElement]) -> Matrix:
    index = {x: row for row, x in enumerate(target)}
    columns = []
    for x in source:
        image = expand(n, commutator(combination_matrix(n, element), as_matrix(n, x)))
        column = [Rational(0)] * len(target)
        for y, value in image.items():
            if y not in index:
                raise GradingError(f"[f, {x}] leaves the expected graded component")
            column[index[y]] = Rational(value.numerator, value.denominator)
        columns.append(column)
    if not columns or not target:
        return Matrix.zeros(len(target), len(source))
    return Matrix(columns).T


def verify_goodness(n: int, m: int, variant: str = "standard") -> bool:
    """ad f is injective from degree >= 1 and surjective onto degree <= -1"""
    nilpotent = hook_nilpotent(n, m, variant)
    grading = good_grading(n, m)
    fc = nilpotent.as_combination()
    if any(grading.degree(x) != -1 for x in fc):
        return False
    components: Dict[int, List[BasisElement]] = {}
    for x in basis(n):
        components.setdefault(grading.degree(x), []).append(x)
    for degree, source in components.items():
        target = components.get(degree - 1, [])
        rank = _ad_matrix(n, fc, source, target).rank() if source and target else 0
        if degree >= 1 and rank != len(source):
            return False
        if degree <= 0 and rank != len(target):
            return False
    return True
