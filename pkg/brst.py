#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Quantum hamiltonian reduction data for sl(n+1)

The complex V^k(g) ⊗ F(charged) ⊗ F(neutral) is presented with currents
J[e,i,j], J[h,i], J[f,i,j], charged fermion pairs phi[..], psi[..] for the
positive-degree basis elements and neutral fields Phi[..] for degree 1/2.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from sympy import Matrix, Rational

from errors import CriticalLevelError, GradingError, RangeError
from presentation import (EVEN, ODD, AlgebraPresentation, FieldExpr, GeneratorDecl, LambdaPoly,
                          Monomial, linear_sum, one)
from rootdata import (BasisElement, as_matrix, basis, cartan_matrix, combination_matrix, commutator,
                      dual_basis, expand, f, h, hook_nilpotent, inner, inverse_cartan, structure_constants)
from scalars import K, Scalar

HALF = Fraction(1, 2)


def current_name(x: BasisElement) -> str:
    if x.kind == "h":
        return f"J[h,{x.i}]"
    return f"J[{x.kind},{x.i},{x.j}]"


def _suffix(x: BasisElement) -> str:
    return f"[{x.kind},{x.i}]" if x.kind == "h" else f"[{x.kind},{x.i},{x.j}]"


def phi_name(x: BasisElement) -> str:
    return "phi" + _suffix(x)


def psi_name(x: BasisElement) -> str:
    return "psi" + _suffix(x)


def neutral_name(x: BasisElement) -> str:
    return "Phi" + _suffix(x)


def _to_rational(value: Fraction) -> Rational:
    return Rational(value.numerator, value.denominator)


@dataclass(frozen=True)
class ReductionDatum:
    """g = sl(n+1), nilpotent f, grading alpha_i(x) = grade[i-1]"""
    name: str
    n: int
    f: Tuple[Tuple[BasisElement, Fraction], ...]
    grade: Tuple[Fraction, ...]

    def __post_init__(self):
        if len(self.grade) != self.n:
            raise GradingError(f"{self.name}: expected {self.n} simple-root grades")
        for x, _ in self.f:
            if self.degree(x) != -1:
                raise GradingError(f"{self.name}: {x} has degree {self.degree(x)}, f must sit in degree -1")
        if not self.is_good():
            raise GradingError(f"{self.name}: the grading is not good for f")

    # -- grading ----------------------------------------------------------
    def degree(self, x: BasisElement) -> Fraction:
        if x.kind == "h":
            return Fraction(0)
        weight = sum((Fraction(self.grade[t - 1]) for t in range(x.i, x.j + 1)), Fraction(0))
        return weight if x.kind == "e" else -weight

    @cached_property
    def x(self) -> Dict[BasisElement, Fraction]:
        """Grading element in the h basis"""
        inv = inverse_cartan(self.n)
        coefficients = {}
        for i in range(1, self.n + 1):
            value = sum((inv[i - 1][j - 1] * Fraction(self.grade[j - 1]) for j in range(1, self.n + 1)),
                        Fraction(0))
            if value:
                coefficients[h(i)] = value
        return coefficients

    def x_norm(self) -> Fraction:
        c = cartan_matrix(self.n)
        return sum((u * v * c[a.i - 1][b.i - 1] for a, u in self.x.items() for b, v in self.x.items()),
                   Fraction(0))

    @cached_property
    def positive(self) -> List[BasisElement]:
        return [x for x in basis(self.n) if self.degree(x) > 0]

    @cached_property
    def half(self) -> List[BasisElement]:
        return [x for x in basis(self.n) if self.degree(x) == Fraction(1, 2)]

    def f_pairing(self, x: BasisElement) -> Fraction:
        return sum((c * inner(self.n, y, x) for y, c in self.f), Fraction(0))

    def neutral_form(self, a: BasisElement, b: BasisElement) -> Fraction:
        """(f | [a, b])"""
        bracket = structure_constants(self.n, a, b)
        return sum((c * self.f_pairing(y) for y, c in bracket.items()), Fraction(0))

    def is_good(self) -> bool:
        """ad f injective from degree >= 1/2, surjective onto degree <= -1/2"""
        components: Dict[Fraction, List[BasisElement]] = {}
        for x in basis(self.n):
            components.setdefault(self.degree(x), []).append(x)
        fmatrix = combination_matrix(self.n, dict(self.f))
        for degree, source in components.items():
            target = components.get(degree - 1, [])
            index = {y: row for row, y in enumerate(target)}
            columns = []
            for x in source:
                column = [Rational(0)] * len(target)
                for y, value in expand(self.n, commutator(fmatrix, as_matrix(self.n, x))).items():
                    if y not in index:
                        return False
                    column[index[y]] = _to_rational(value)
                columns.append(column)
            rank = Matrix(columns).T.rank() if source and target else 0
            if degree >= HALF and rank != len(source):
                return False
            if degree <= HALF and rank != len(target):
                return False
        return True

    # -- the complex ------------------------------------------------------
    @cached_property
    def presentation(self) -> AlgebraPresentation:
        return self.presentation_at(K)

    def presentation_at(self, level: Scalar) -> AlgebraPresentation:
        """The complex with the currents at level k = level"""
        cache = self.__dict__.setdefault("_complexes", {})
        if level not in cache:
            cache[level] = self._build_complex(level)
        return cache[level]

    def _build_complex(self, level: Scalar) -> AlgebraPresentation:
        n = self.n
        elements = basis(n)
        generators = [GeneratorDecl(current_name(x), EVEN, Fraction(1), "current") for x in elements]
        brackets: Dict[Tuple[str, str], LambdaPoly] = {}
        for position, a in enumerate(elements):
            for b in elements[position:]:
                raw: Dict[int, FieldExpr] = {}
                bracket = structure_constants(n, a, b)
                if bracket:
                    raw[0] = FieldExpr({_current_monomial(y): c for y, c in bracket.items()})
                form = inner(n, a, b)
                if form:
                    raw[1] = one(level * form)
                if raw:
                    brackets[(current_name(a), current_name(b))] = LambdaPoly(raw)
        for x in self.positive:
            generators.append(GeneratorDecl(phi_name(x), ODD, Fraction(self.degree(x)), "fermion"))
            generators.append(GeneratorDecl(psi_name(x), ODD, 1 - Fraction(self.degree(x)), "fermion"))
            brackets[(phi_name(x), psi_name(x))] = LambdaPoly({0: one(1)})
        for position, a in enumerate(self.half):
            generators.append(GeneratorDecl(neutral_name(a), EVEN, Fraction(1, 2), "neutral"))
            for b in self.half[position + 1:]:
                value = self.neutral_form(a, b)
                if value:
                    brackets[(neutral_name(a), neutral_name(b))] = LambdaPoly({0: one(value)})
        label = f"C({self.name})" if level == K else f"C({self.name}, k={level})"
        return AlgebraPresentation(label, generators, brackets)

    def current(self, combo: Dict[BasisElement, Fraction]) -> FieldExpr:
        return FieldExpr({_current_monomial(y): c for y, c in combo.items()})


def _current_monomial(x: BasisElement) -> Monomial:
    return Monomial(((current_name(x), 0),))


# -- named data ------------------------------------------------------------
def hook_datum(n: int, m: int, variant: str = "standard") -> ReductionDatum:
    nilpotent = hook_nilpotent(n, m, variant)
    grade = tuple(Fraction(0) if i <= m - 1 else Fraction(1) for i in range(1, n + 1))
    return ReductionDatum(f"sl{n + 1}-hook{m}", n, tuple((x, Fraction(c)) for x, c in nilpotent.terms), grade)


def _datum(name: str, n: int, f_terms, grade) -> ReductionDatum:
    return ReductionDatum(name, n, tuple((x, Fraction(1)) for x in f_terms), tuple(Fraction(g) for g in grade))


NAMED = {
    "sl2-prin": lambda: _datum("sl2-prin", 1, [f(1)], (1,)),
    "sl3-prin": lambda: _datum("sl3-prin", 2, [f(1), f(2)], (1, 1)),
    "sl3-min": lambda: _datum("sl3-min", 2, [f(2)], (0, 1)),
    "sl4-min": lambda: _datum("sl4-min", 3, [f(3)], (0, 0, 1)),
    "sl3-min-dynkin": lambda: _datum("sl3-min-dynkin", 2, [f(1, 2)], (HALF, HALF)),
    "sl4-min-dynkin": lambda: _datum("sl4-min-dynkin", 3, [f(1, 3)], (HALF, 0, HALF)),
}

# hook index of each named datum, for the central charge comparison
NAMED_HOOK = {
    "sl2-prin": (1, 1),
    "sl3-prin": (2, 1),
    "sl3-min": (2, 2),
    "sl4-min": (3, 3),
    "sl3-min-dynkin": (2, 2),
    "sl4-min-dynkin": (3, 3),
}


def reduction_datum(name: str) -> ReductionDatum:
    try:
        return NAMED[name]()
    except KeyError:
        raise RangeError(f"unknown reduction datum {name!r}; choose from {', '.join(NAMED)}")


# -- fields ----------------------------------------------------------------
def _check_level(n: int, k: Scalar) -> None:
    if not (k + (n + 1)):
        raise CriticalLevelError(f"k = -{n + 1} is the critical level of sl({n + 1})")


def brst_differential(R: ReductionDatum, k: Optional[Scalar] = None) -> FieldExpr:
    """d = sum J^a psi^a - 1/2 sum C^{ab}_c phi^c psi^a psi^b + sum (f|u_a) psi^a + sum psi^a Phi_a"""
    level = K if k is None else Scalar.coerce(k)
    engine = R.presentation_at(level).engine
    parts = []
    with engine.metered():
        for a in R.positive:
            parts.append(engine.build([(current_name(a), 0), (psi_name(a), 0)], None))
            pairing = R.f_pairing(a)
            if pairing:
                parts.append(FieldExpr.generator(psi_name(a), coeff=pairing))
        for a in R.positive:
            for b in R.positive:
                for c, value in structure_constants(R.n, a, b).items():
                    factors = [(phi_name(c), 0), (psi_name(a), 0), (psi_name(b), 0)]
                    parts.append(engine.build(factors, None) * (-Fraction(1, 2) * value))
        for a in R.half:
            parts.append(engine.build([(psi_name(a), 0), (neutral_name(a), 0)], None))
    return linear_sum(parts)


def _neutral_duals(R: ReductionDatum) -> Dict[BasisElement, Dict[BasisElement, Fraction]]:
    """Phi^a with [Phi_b lambda Phi^a] = delta_ab"""
    half = R.half
    if not half:
        return {}
    form = Matrix([[_to_rational(R.neutral_form(a, b)) for b in half] for a in half])
    if form.det() == 0:
        raise GradingError(f"{R.name}: (f | [., .]) is degenerate on degree 1/2")
    dual = -form.inv()
    result = {}
    for row, a in enumerate(half):
        result[a] = {}
        for col, c in enumerate(half):
            value = dual[row, col]
            if value != 0:
                result[a][c] = Fraction(int(value.p), int(value.q))
    return result


def brst_em_field(R: ReductionDatum, k: Optional[Scalar] = None) -> FieldExpr:
    """Sugawara + dx + charged and neutral ghost parts"""
    n = R.n
    level = K if k is None else Scalar.coerce(k)
    _check_level(n, level)
    engine = R.presentation_at(level).engine
    parts = []
    sugawara = (level + (n + 1)).inverse() * Fraction(1, 2)
    with engine.metered():
        for x, partner in dual_basis(n).items():
            for y, c in partner.items():
                parts.append(engine.build([(current_name(x), 0), (current_name(y), 0)], None) * (sugawara * c))
        parts.append(engine.derivative_expr(R.current(R.x)))
        for a in R.positive:
            weight = R.degree(a)
            parts.append(engine.build([(psi_name(a), 0), (phi_name(a), 1)], None) * (-weight))
            parts.append(engine.build([(psi_name(a), 1), (phi_name(a), 0)], None) * (1 - weight))
        for a, partner in _neutral_duals(R).items():
            for c, value in partner.items():
                parts.append(engine.build([(neutral_name(c), 1), (neutral_name(a), 0)], None) * (value / 2))
    return linear_sum(parts)


def central_charge(R: ReductionDatum, k: Optional[Scalar] = None) -> Scalar:
    """k dim g/(k+h) - 12k<x,x> - sum (12 m^2 - 12 m + 2) - dim g_{1/2} / 2"""
    n = R.n
    level = K if k is None else Scalar.coerce(k)
    _check_level(n, level)
    dim = (n + 1) ** 2 - 1
    total = level * dim / (level + (n + 1)) - level * (12 * R.x_norm())
    for a in R.positive:
        m = R.degree(a)
        total = total - (12 * m * m - 12 * m + 2)
    return total - Fraction(len(R.half), 2)


def hook_central_charge(n: int, m: int, k: Optional[Scalar] = None) -> Scalar:
    if not 1 <= m <= n + 1:
        raise RangeError(f"hook index m must satisfy 1 <= m <= {n + 1}, got {m}")
    level = K if k is None else Scalar.coerce(k)
    _check_level(n, level)
    block = n - m + 2
    affine = level * (n * (n + 2)) / (level + (n + 1))
    correction = (m - n - 1) * (m * m * (n + 2) - 2 * m * (n * n + 3 * n + 3) + n ** 3 + 4 * n * n + 5 * n + 3)
    return affine - level * (block * (block * block - 1)) + correction


def j_level(n: int, m: int, k: Optional[Scalar] = None) -> Scalar:
    """Pole-two coefficient of J(z) J(w)"""
    if m < 2 or m > n + 1:
        raise RangeError(f"the Heisenberg field J needs 2 <= m <= {n + 1}, got {m}")
    level = K if k is None else Scalar.coerce(k)
    return -(m - 1) * (1 + n - (level + (n + 1)) * (n - m + 2)) / Scalar(n + 1)
