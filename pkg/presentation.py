#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Field expressions and algebra presentations

A monomial is a right-nested normally ordered product
    :f1 (f2 (... (fr e^lambda)...)):
of generator derivatives f = (name, order), optionally closed by one lattice
vertex operator.  A FieldExpr is a finite linear combination of canonical
monomials with Scalar coefficients.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, Iterator, List, Mapping, NamedTuple, Optional, Tuple

from errors import PresentationError
from scalars import ONE, ZERO, Scalar, ScalarLike

EVEN = 0
ODD = 1

Factor = Tuple[str, int]


@dataclass(frozen=True)
class GeneratorDecl:
    name: str
    parity: int = EVEN
    weight: Optional[Fraction] = None
    # current | ghost | pi | fermion | neutral | abstract
    kind: str = "abstract"


class ExponentVector:
    """Finitely supported map direction -> Scalar, the lambda of e^lambda"""

    __slots__ = ("items_", "_hash")

    def __init__(self, coefficients: Optional[Mapping[str, ScalarLike]] = None):
        clean = {}
        for direction, value in (coefficients or {}).items():
            value = Scalar.coerce(value)
            if value:
                clean[direction] = value
        self.items_ = tuple(sorted(clean.items()))
        self._hash = hash(self.items_)

    def items(self) -> Tuple[Tuple[str, Scalar], ...]:
        return self.items_

    def get(self, direction: str) -> Scalar:
        for name, value in self.items_:
            if name == direction:
                return value
        return ZERO

    def directions(self) -> List[str]:
        return [name for name, _ in self.items_]

    def is_zero(self) -> bool:
        return not self.items_

    def __add__(self, other: "ExponentVector") -> "ExponentVector":
        merged: Dict[str, Scalar] = dict(self.items_)
        for name, value in other.items_:
            merged[name] = merged.get(name, ZERO) + value
        return ExponentVector(merged)

    def __neg__(self) -> "ExponentVector":
        return ExponentVector({name: -value for name, value in self.items_})

    def scale(self, factor: ScalarLike) -> "ExponentVector":
        return ExponentVector({name: value * factor for name, value in self.items_})

    def __eq__(self, other) -> bool:
        return isinstance(other, ExponentVector) and self.items_ == other.items_

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        body = ", ".join(f"{name}: {value}" for name, value in self.items_)
        return f"vop{{{body}}}"


class Monomial(NamedTuple):
    factors: Tuple[Factor, ...]
    exponent: Optional[ExponentVector] = None

    def pieces(self) -> int:
        return len(self.factors) + (1 if self.exponent is not None else 0)

    def is_identity(self) -> bool:
        return not self.factors and self.exponent is None

    def sort_key(self):
        exp = () if self.exponent is None else tuple((d, str(v)) for d, v in self.exponent.items())
        return (len(self.factors), self.factors, exp)


IDENTITY = Monomial((), None)


class FieldExpr:
    """Immutable linear combination of canonical monomials"""

    __slots__ = ("terms", "_hash")

    def __init__(self, terms: Optional[Mapping[Monomial, ScalarLike]] = None):
        clean: Dict[Monomial, Scalar] = {}
        for mono, coeff in (terms or {}).items():
            coeff = Scalar.coerce(coeff)
            if coeff:
                clean[mono] = coeff
        self.terms = clean
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls) -> "FieldExpr":
        return cls()

    @classmethod
    def identity(cls, coeff: ScalarLike = 1) -> "FieldExpr":
        return cls({IDENTITY: coeff})

    @classmethod
    def generator(cls, name: str, order: int = 0, coeff: ScalarLike = 1) -> "FieldExpr":
        return cls({Monomial(((name, order),), None): coeff})

    @classmethod
    def vertex(cls, exponent: ExponentVector, coeff: ScalarLike = 1) -> "FieldExpr":
        if exponent.is_zero():
            return cls.identity(coeff)
        return cls({Monomial((), exponent): coeff})

    @classmethod
    def monomial(cls, mono: Monomial, coeff: ScalarLike = 1) -> "FieldExpr":
        return cls({mono: coeff})

    # -- queries ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def items(self) -> Iterator[Tuple[Monomial, Scalar]]:
        return iter(self.terms.items())

    def sorted_items(self) -> List[Tuple[Monomial, Scalar]]:
        return sorted(self.terms.items(), key=lambda item: item[0].sort_key())

    def coefficient(self, mono: Monomial) -> Scalar:
        return self.terms.get(mono, ZERO)

    def exponents(self) -> set:
        return {mono.exponent for mono in self.terms}

    def generators(self) -> set:
        return {name for mono in self.terms for name, _ in mono.factors}

    def directions(self) -> set:
        found = set()
        for mono in self.terms:
            if mono.exponent is not None:
                found.update(mono.exponent.directions())
        return found

    def scalar_value(self) -> Optional[Scalar]:
        """The scalar c when this expression is c times the identity"""
        if not self.terms:
            return ZERO
        if set(self.terms) == {IDENTITY}:
            return self.terms[IDENTITY]
        return None

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other: "FieldExpr") -> "FieldExpr":
        if not isinstance(other, FieldExpr):
            return NotImplemented
        merged = dict(self.terms)
        for mono, coeff in other.terms.items():
            merged[mono] = merged.get(mono, ZERO) + coeff
        return FieldExpr(merged)

    def __neg__(self) -> "FieldExpr":
        return FieldExpr({mono: -coeff for mono, coeff in self.terms.items()})

    def __sub__(self, other: "FieldExpr") -> "FieldExpr":
        if not isinstance(other, FieldExpr):
            return NotImplemented
        return self + (-other)

    def __mul__(self, factor) -> "FieldExpr":
        try:
            factor = Scalar.coerce(factor)
        except TypeError:
            return NotImplemented
        if not factor:
            return FieldExpr()
        return FieldExpr({mono: coeff * factor for mono, coeff in self.terms.items()})

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, FieldExpr):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __str__(self) -> str:
        from fieldtext import pretty
        return pretty(self)

    def __repr__(self) -> str:
        return f"FieldExpr({str(self)!r})"


def linear_sum(parts: Iterable[FieldExpr]) -> FieldExpr:
    merged: Dict[Monomial, Scalar] = {}
    for part in parts:
        for mono, coeff in part.terms.items():
            merged[mono] = merged.get(mono, ZERO) + coeff
    return FieldExpr(merged)


class LambdaPoly:
    """[a_lambda b] = sum_j lambda^j * raw[j]

    ``coefficients`` gives the pole convention: coefficient j is c_{j+1} = a_(j)b,
    so [a_lambda b] = sum_j lambda^j / j! * c_{j+1}.
    """

    __slots__ = ("raw",)

    def __init__(self, raw: Optional[Mapping[int, FieldExpr]] = None):
        self.raw: Dict[int, FieldExpr] = {j: expr for j, expr in (raw or {}).items() if expr}

    @classmethod
    def from_poles(cls, poles: Mapping[int, FieldExpr]) -> "LambdaPoly":
        return cls({n - 1: expr * Fraction(1, factorial(n - 1)) for n, expr in poles.items()})

    @property
    def coefficients(self) -> Dict[int, FieldExpr]:
        return {j: expr * factorial(j) for j, expr in sorted(self.raw.items())}

    def poles(self) -> Dict[int, FieldExpr]:
        return {j + 1: expr * factorial(j) for j, expr in sorted(self.raw.items())}

    def product(self, j: int) -> FieldExpr:
        """a_(j) b for j >= 0"""
        return self.raw.get(j, FieldExpr()) * factorial(j)

    def degree(self) -> int:
        return max(self.raw) if self.raw else -1

    def is_zero(self) -> bool:
        return not self.raw

    def __add__(self, other: "LambdaPoly") -> "LambdaPoly":
        merged = dict(self.raw)
        for j, expr in other.raw.items():
            merged[j] = merged[j] + expr if j in merged else expr
        return LambdaPoly(merged)

    def __mul__(self, factor) -> "LambdaPoly":
        return LambdaPoly({j: expr * factor for j, expr in self.raw.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "LambdaPoly":
        return self * -1

    def __eq__(self, other) -> bool:
        return isinstance(other, LambdaPoly) and self.raw == other.raw

    def __repr__(self) -> str:
        return f"LambdaPoly({ {j: str(e) for j, e in sorted(self.raw.items())} })"


@dataclass
class OPEResult:
    poles: Dict[int, FieldExpr]
    shift: Optional[Scalar] = None
    regular: Optional[FieldExpr] = None

    def pole(self, n: int) -> FieldExpr:
        return self.poles.get(n, FieldExpr())

    def is_zero(self) -> bool:
        return not any(expr for expr in self.poles.values())

    def to_text(self) -> Dict[int, str]:
        return {n: str(expr) for n, expr in sorted(self.poles.items())}


class AlgebraPresentation:
    """Generators, their pairwise lambda-brackets and exponent Gram data

    ``brackets`` maps an ordered pair (a, b) to [a_lambda b]; the reversed
    pair is derived by skew-symmetry.  ``gram`` holds the pairing of exponent
    directions; every direction is also a weight-one current generator whose
    bracket with another direction d is gram * lambda.
    """

    def __init__(self, label: str, generators: Iterable[GeneratorDecl],
                 brackets: Optional[Mapping[Tuple[str, str], LambdaPoly]] = None,
                 gram: Optional[Mapping[Tuple[str, str], ScalarLike]] = None):
        self.label = label
        self.generators: Tuple[GeneratorDecl, ...] = tuple(generators)
        self.rank: Dict[str, int] = {}
        for position, decl in enumerate(self.generators):
            if decl.name in self.rank:
                raise PresentationError(f"duplicate generator {decl.name!r} in {label}")
            self.rank[decl.name] = position
        self.parity: Dict[str, int] = {g.name: g.parity for g in self.generators}
        self.brackets: Dict[Tuple[str, str], LambdaPoly] = {}
        for (a, b), poly in (brackets or {}).items():
            self._check_name(a)
            self._check_name(b)
            if (b, a) in self.brackets and (a, b) != (b, a):
                raise PresentationError(f"bracket of {a!r} and {b!r} declared twice")
            self.brackets[(a, b)] = poly
        self.gram: Dict[Tuple[str, str], Scalar] = {}
        for (x, y), value in (gram or {}).items():
            self._check_name(x)
            self._check_name(y)
            value = Scalar.coerce(value)
            self.gram[(x, y)] = value
            self.gram[(y, x)] = value
        self.directions = sorted({x for x, _ in self.gram}, key=self.rank.get)
        self.direction_set = set(self.directions)
        self._check_parities()
        self.free = self._compute_free()
        self._engine = None

    # -- validation -------------------------------------------------------
    def _check_name(self, name: str) -> None:
        if name not in self.rank:
            raise PresentationError(f"unknown generator {name!r} in {self.label}")

    def _check_parities(self) -> None:
        for (a, b), poly in self.brackets.items():
            expected = (self.parity[a] + self.parity[b]) % 2
            for expr in poly.raw.values():
                for mono in expr.terms:
                    parity = sum(self.parity[name] for name, _ in mono.factors) % 2
                    if parity != expected:
                        raise PresentationError(f"bracket [{a} {b}] has a term of the wrong parity")

    def _compute_free(self) -> Dict[str, bool]:
        free = {g.name: True for g in self.generators}
        for (a, b), poly in self.brackets.items():
            if any(expr.scalar_value() is None for expr in poly.raw.values()):
                free[a] = False
                free[b] = False
        return free

    # -- queries ----------------------------------------------------------
    def has(self, name: str) -> bool:
        return name in self.rank

    def decl(self, name: str) -> GeneratorDecl:
        self._check_name(name)
        return self.generators[self.rank[name]]

    def names(self) -> List[str]:
        return [g.name for g in self.generators]

    def is_free(self) -> bool:
        return all(self.free.values())

    def is_direction(self, name: str) -> bool:
        return name in self.direction_set

    def pairing(self, generator: str, exponent: ExponentVector) -> Scalar:
        """Pole-one coefficient of generator(z) e^lambda(w)"""
        if generator not in self.direction_set:
            return ZERO
        total = ZERO
        for direction, value in exponent.items():
            total = total + self.gram.get((generator, direction), ZERO) * value
        return total

    def exponent_pairing(self, left: ExponentVector, right: ExponentVector) -> Scalar:
        total = ZERO
        for x, u in left.items():
            for y, v in right.items():
                g = self.gram.get((x, y))
                if g is not None:
                    total = total + g * u * v
        return total

    def check_expr(self, expr: FieldExpr) -> None:
        for mono in expr.terms:
            for name, _ in mono.factors:
                if name not in self.rank:
                    raise PresentationError(f"generator {name!r} does not belong to {self.label}")
            if mono.exponent is not None:
                for direction in mono.exponent.directions():
                    if direction not in self.direction_set:
                        raise PresentationError(f"exponent direction {direction!r} is not declared in {self.label}")

    @property
    def engine(self):
        if self._engine is None:
            from opecore import OPEEngine
            self._engine = OPEEngine(self)
        return self._engine

    def __repr__(self) -> str:
        return f"AlgebraPresentation({self.label!r}, {len(self.generators)} generators)"


def tensor(*parts: AlgebraPresentation, label: Optional[str] = None) -> AlgebraPresentation:
    """Tensor product; generator names must be disjoint, cross brackets vanish"""
    generators: List[GeneratorDecl] = []
    brackets: Dict[Tuple[str, str], LambdaPoly] = {}
    gram: Dict[Tuple[str, str], Scalar] = {}
    for part in parts:
        generators.extend(part.generators)
        brackets.update(part.brackets)
        gram.update(part.gram)
    name = label or " ⊗ ".join(part.label for part in parts)
    return AlgebraPresentation(name, generators, brackets, gram)


def gen(name: str, order: int = 0, coeff: ScalarLike = 1) -> FieldExpr:
    return FieldExpr.generator(name, order, coeff)


def one(coeff: ScalarLike = 1) -> FieldExpr:
    return FieldExpr.identity(coeff)


def vop(coefficients: Mapping[str, ScalarLike], coeff: ScalarLike = 1) -> FieldExpr:
    return FieldExpr.vertex(ExponentVector(coefficients), coeff)
