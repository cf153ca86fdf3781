#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Free-field algebras and the screening data built on them

Generator names: Heisenberg currents a1..an (shifted level k+n+1), ghost
pairs B[i,j] / G[i,j] for the root alpha_{i,j}, the half-lattice currents c
and d, fermion pairs phi[...] / psi[...].  Tilded copies carry the prefix t
(ta1, tB[2,2], tc, td).
"""

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Optional, Tuple

import sympy

from errors import PresentationError, RangeError
from opecore import substitute
from presentation import (EVEN, ODD, AlgebraPresentation, ExponentVector, FieldExpr, GeneratorDecl,
                          LambdaPoly, Monomial, one)
from rootdata import cartan_matrix, classify_root, inverse_cartan, positive_roots, root_vector
from scalars import K, Scalar
from settings import PRESENTATION_CACHE_SIZE

Root = Tuple[int, int]


# -- names -----------------------------------------------------------------
def heis_name(i: int, prefix: str = "") -> str:
    return f"{prefix}a{i}"


def beta_name(root: Root, prefix: str = "") -> str:
    return f"{prefix}B[{root[0]},{root[1]}]"


def gamma_name(root: Root, prefix: str = "") -> str:
    return f"{prefix}G[{root[0]},{root[1]}]"


def beta(root: Root, prefix: str = "") -> FieldExpr:
    return FieldExpr.generator(beta_name(root, prefix))


def gamma(root: Root, prefix: str = "") -> FieldExpr:
    return FieldExpr.generator(gamma_name(root, prefix))


def shifted_level(n: int) -> Scalar:
    return K + (n + 1)


# -- stacks ----------------------------------------------------------------
@dataclass(frozen=True)
class FreeFieldStack:
    """Heisenberg (optional) + ghosts on chosen roots + optional Pi + optional bc pairs"""
    n: int
    heisenberg: bool = True
    ghost_roots: Tuple[Root, ...] = ()
    pi: bool = False
    fermion_roots: Tuple[Root, ...] = ()
    prefix: str = ""

    def __post_init__(self):
        valid = set(positive_roots(self.n))
        for root in self.ghost_roots + self.fermion_roots:
            if root not in valid:
                raise RangeError(f"alpha[{root[0]},{root[1]}] is not a positive root of sl({self.n + 1})")

    @property
    def presentation(self) -> AlgebraPresentation:
        return _stack_presentation(self)

    def without_ghost(self, root: Root) -> "FreeFieldStack":
        if root not in self.ghost_roots:
            raise PresentationError(f"no ghost pair at alpha[{root[0]},{root[1]}]")
        return replace(self, ghost_roots=tuple(r for r in self.ghost_roots if r != root))

    def with_pi(self) -> "FreeFieldStack":
        if self.pi:
            raise PresentationError("the stack already contains the half-lattice directions c, d")
        return replace(self, pi=True)

    def describe(self) -> str:
        parts = []
        if self.heisenberg:
            parts.append(f"heis:n={self.n}")
        if self.ghost_roots:
            parts.append("ghosts[" + " ".join(f"{i},{j}" for i, j in self.ghost_roots) + "]")
        if self.pi:
            parts.append("pi")
        if self.fermion_roots:
            parts.append(f"bc[{len(self.fermion_roots)}]")
        return f"{self.prefix}(" + " + ".join(parts) + ")"


@lru_cache(maxsize=PRESENTATION_CACHE_SIZE)
def _stack_presentation(stack: FreeFieldStack) -> AlgebraPresentation:
    p = stack.prefix
    generators: List[GeneratorDecl] = []
    brackets: Dict[Tuple[str, str], LambdaPoly] = {}
    gram: Dict[Tuple[str, str], Scalar] = {}
    n = stack.n
    if stack.heisenberg:
        cartan = cartan_matrix(n)
        level = shifted_level(n)
        for i in range(1, n + 1):
            generators.append(GeneratorDecl(heis_name(i, p), EVEN, Fraction(1), "current"))
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                if cartan[i - 1][j - 1]:
                    gram[(heis_name(i, p), heis_name(j, p))] = level * cartan[i - 1][j - 1]
    for root in sorted(stack.ghost_roots):
        b, g = beta_name(root, p), gamma_name(root, p)
        generators.append(GeneratorDecl(b, EVEN, Fraction(1), "ghost"))
        generators.append(GeneratorDecl(g, EVEN, Fraction(0), "ghost"))
        brackets[(b, g)] = LambdaPoly({0: one(-1)})
    if stack.pi:
        generators.append(GeneratorDecl(f"{p}c", EVEN, Fraction(1), "pi"))
        generators.append(GeneratorDecl(f"{p}d", EVEN, Fraction(1), "pi"))
        gram[(f"{p}c", f"{p}d")] = Scalar(2)
    for root in sorted(stack.fermion_roots):
        phi, psi = f"{p}phi[{root[0]},{root[1]}]", f"{p}psi[{root[0]},{root[1]}]"
        generators.append(GeneratorDecl(phi, ODD, None, "fermion"))
        generators.append(GeneratorDecl(psi, ODD, None, "fermion"))
        brackets[(phi, psi)] = LambdaPoly({0: one(1)})
    return AlgebraPresentation(stack.describe(), generators, brackets, gram)


def heisenberg(n: int, prefix: str = "") -> FreeFieldStack:
    return FreeFieldStack(n, heisenberg=True, prefix=prefix)


def ghosts(n: int, roots: Optional[Iterable[Root]] = None, prefix: str = "") -> FreeFieldStack:
    chosen = tuple(sorted(roots)) if roots is not None else tuple(positive_roots(n))
    return FreeFieldStack(n, heisenberg=False, ghost_roots=chosen, prefix=prefix)


def half_lattice(prefix: str = "") -> FreeFieldStack:
    return FreeFieldStack(1, heisenberg=False, pi=True, prefix=prefix)


def zero_roots(n: int, m: int) -> List[Root]:
    """(Delta_0)^+ for the hook grading: alpha_{i,j} with j <= m-1"""
    return [(i, j) for i, j in positive_roots(n) if j <= m - 1]


def wakimoto_stack(n: int) -> FreeFieldStack:
    return FreeFieldStack(n, ghost_roots=tuple(positive_roots(n)))


def hook_stack(n: int, m: int) -> FreeFieldStack:
    return FreeFieldStack(n, ghost_roots=tuple(zero_roots(n, m)))


def parse_stack(spec: str, max_rank: Optional[int] = None) -> FreeFieldStack:
    """'heis:n=3+ghosts:n=3:m=3+pi' and friends; max_rank caps n"""
    n: Optional[int] = None
    heis = False
    roots: List[Root] = []
    pi = False
    fermions: List[Root] = []
    for part in spec.split("+"):
        fields = [f.strip() for f in part.strip().split(":") if f.strip()]
        if not fields:
            raise PresentationError(f"empty stack component in {spec!r}")
        kind, options = fields[0], {}
        for option in fields[1:]:
            if "=" not in option:
                raise PresentationError(f"malformed stack option {option!r}")
            key, value = option.split("=", 1)
            try:
                options[key.strip()] = int(value)
            except ValueError:
                raise PresentationError(f"stack option {key} needs an integer, got {value!r}")
        rank = options.get("n")
        if rank is not None:
            if max_rank is not None and rank > max_rank:
                raise RangeError(f"stack rank n={rank} exceeds the limit of {max_rank}")
            if n is not None and rank != n:
                raise PresentationError("all stack components must share the same n")
            n = rank
        if kind == "heis":
            heis = True
        elif kind == "ghosts":
            if rank is None:
                raise PresentationError("ghosts need n=")
            m = options.get("m")
            roots.extend(zero_roots(rank, m) if m is not None else positive_roots(rank))
        elif kind == "pi":
            pi = True
        elif kind == "bc":
            if rank is None:
                raise PresentationError("bc needs n=")
            fermions.extend(positive_roots(rank))
        else:
            raise PresentationError(f"unknown stack component {kind!r}")
    if heis and n is None:
        raise PresentationError("heis needs n=")
    return FreeFieldStack(n or 1, heisenberg=heis, ghost_roots=tuple(sorted(set(roots))), pi=pi,
                          fermion_roots=tuple(sorted(set(fermions))))


# -- Heisenberg combinations -----------------------------------------------
def omega_field(n: int, j: int, prefix: str = "") -> FieldExpr:
    """Fundamental-weight current sum_i C^{-1}_{j,i} a_i"""
    if not 1 <= j <= n:
        raise RangeError(f"omega_{j} does not exist for sl({n + 1})")
    row = inverse_cartan(n)[j - 1]
    return FieldExpr({Monomial(((heis_name(i, prefix), 0),)): row[i - 1] for i in range(1, n + 1) if row[i - 1]})


def simple_root_exponent(n: int, i: int, prefix: str = "") -> ExponentVector:
    """-alpha_i / (k+n+1)"""
    return ExponentVector({heis_name(i, prefix): -shifted_level(n).inverse()})


# -- rho^R -----------------------------------------------------------------
def coordinate(j: int, k: int) -> sympy.Symbol:
    return sympy.Symbol(f"x_{j}_{k}")


@dataclass
class DiffOpPoly:
    """sum over coordinates x_{j,k} of polynomial * d/dx_{j,k}"""
    n: int
    terms: Dict[Root, sympy.Expr] = field(default_factory=dict)

    def __eq__(self, other) -> bool:
        if not isinstance(other, DiffOpPoly) or other.n != self.n:
            return False
        for key in set(self.terms) | set(other.terms):
            if sympy.expand(self.terms.get(key, 0) - other.terms.get(key, 0)) != 0:
                return False
        return True

    def __str__(self) -> str:
        pieces = []
        for (j, k), poly in sorted(self.terms.items()):
            pieces.append(f"({poly})*d/dx[{j},{k}]")
        return " + ".join(pieces) or "0"


def _check_index(n: int, i: int) -> None:
    if not 1 <= i <= n:
        raise RangeError(f"simple root index {i} out of range for sl({n + 1})")


def rho_r(n: int, i: int) -> DiffOpPoly:
    """Closed form d/dx_{i,i} + sum_j x_{i-j,i-1} d/dx_{i-j,i}"""
    _check_index(n, i)
    terms: Dict[Root, sympy.Expr] = {(i, i): sympy.Integer(1)}
    for j in range(1, i):
        terms[(i - j, i)] = coordinate(i - j, i - 1)
    return DiffOpPoly(n, terms)


def rho_r_bruteforce(n: int, i: int) -> DiffOpPoly:
    """Right action of e_i read off the unipotent matrix product X e_i"""
    _check_index(n, i)
    size = n + 1
    X = sympy.eye(size)
    for j, k in positive_roots(n):
        X[j - 1, k] = coordinate(j, k)
    E = sympy.zeros(size, size)
    E[i - 1, i] = 1
    product = X * E
    terms: Dict[Root, sympy.Expr] = {}
    for j, k in positive_roots(n):
        entry = sympy.expand(product[j - 1, k])
        if entry != 0:
            terms[(j, k)] = entry
    return DiffOpPoly(n, terms)


# -- screenings ------------------------------------------------------------
@dataclass(frozen=True)
class ScreeningField:
    label: str
    body: FieldExpr

    def __post_init__(self):
        exponents = self.body.exponents()
        if len(exponents) != 1 or None in exponents:
            raise PresentationError(f"screening {self.label} must carry exactly one nonzero exponent")

    @property
    def exponent(self) -> ExponentVector:
        return next(iter(self.body.exponents()))

    def ghost_roots(self) -> set:
        roots = set()
        for name in self.body.generators():
            if name.startswith(("B[", "G[")):
                i, j = name[2:-1].split(",")
                roots.add((int(i), int(j)))
        return roots


def _screening(n: int, i: int, prefactor: FieldExpr, label: str, P: AlgebraPresentation) -> ScreeningField:
    exponent = FieldExpr.vertex(simple_root_exponent(n, i))
    body = P.engine.nprod_expr(prefactor, exponent)
    return ScreeningField(label, body)


def _wakimoto_prefactor(i: int) -> FieldExpr:
    """beta_i + sum_j :gamma_{i-j,i-1} beta_{i-j,i}:"""
    total = beta((i, i))
    for j in range(1, i):
        total = total + FieldExpr({Monomial(((gamma_name((i - j, i - 1)), 0), (beta_name((i - j, i)), 0))): 1})
    return total


def _canonical(P: AlgebraPresentation, expr: FieldExpr) -> FieldExpr:
    """Re-canonicalize hand-assembled monomials over P"""
    acc = FieldExpr()
    engine = P.engine
    for mono, coeff in expr.terms.items():
        acc = acc + engine.build(list(mono.factors), mono.exponent) * coeff
    return acc


def wakimoto_screenings(n: int) -> List[ScreeningField]:
    if n < 1:
        raise RangeError("n must be positive")
    P = wakimoto_stack(n).presentation
    return [_screening(n, i, _canonical(P, _wakimoto_prefactor(i)), f"S{i}", P) for i in range(1, n + 1)]


def hook_screenings(n: int, m: int, variant: str = "standard") -> List[ScreeningField]:
    if not 2 <= m <= n + 1:
        raise RangeError(f"hook screenings need 2 <= m <= {n + 1}, got {m}")
    if variant not in ("standard", "bar"):
        raise RangeError(f"unknown variant {variant!r}")
    P = hook_stack(n, m).presentation
    screenings = []
    for i in range(1, n + 1):
        if i <= m - 1:
            prefactor = _canonical(P, _wakimoto_prefactor(i))
        elif i == m and variant == "bar":
            prefactor = gamma((1, m - 1))
        else:
            prefactor = one()
        screenings.append(_screening(n, i, prefactor, f"Q{i}", P))
    allowed = set(zero_roots(n, m))
    for s in screenings:
        if not s.ghost_roots() <= allowed:
            raise PresentationError(f"{s.label} uses ghosts outside (Delta_0)^+")
    return screenings


# -- half-lattice bosonization ---------------------------------------------
def fms_images(prefix: str = "") -> Dict[str, FieldExpr]:
    """beta -> e^c, gamma -> 1/2 :(c+d) e^{-c}:"""
    c, d = f"{prefix}c", f"{prefix}d"
    minus_c = ExponentVector({c: -1})
    return {
        "beta": FieldExpr.vertex(ExponentVector({c: 1})),
        "gamma": FieldExpr({Monomial(((c, 0),), minus_c): Fraction(1, 2),
                            Monomial(((d, 0),), minus_c): Fraction(1, 2)}),
    }


def fms_bosonize(expr: FieldExpr, stack: FreeFieldStack, root: Root) -> Tuple[FieldExpr, FreeFieldStack]:
    """Replace the ghost pair at root by the half-lattice algebra"""
    target = stack.without_ghost(root).with_pi()
    images = fms_images(stack.prefix)
    table = {beta_name(root, stack.prefix): images["beta"], gamma_name(root, stack.prefix): images["gamma"]}
    return substitute(expr, table, target.presentation), target


def fms_screening(prefix: str = "") -> ScreeningField:
    return ScreeningField("FMS", FieldExpr.vertex(ExponentVector({f"{prefix}c": Fraction(1, 2),
                                                                  f"{prefix}d": Fraction(1, 2)})))


# -- tilded fields ---------------------------------------------------------
def _add_roots(a: Root, b: Root, n: int) -> Tuple[int, ...]:
    return tuple(x + y for x, y in zip(root_vector(n, *a), root_vector(n, *b)))


def _vector(n: int, root: Root) -> Tuple[int, ...]:
    return root_vector(n, *root)


@dataclass
class TildeFamily:
    n: int
    m: int
    source: FreeFieldStack
    tilded: FreeFieldStack
    definitions: Dict[str, FieldExpr]
    inverse: Dict[str, FieldExpr]
    roots: Tuple[Root, ...]

    def retilde(self, expr: FieldExpr) -> FieldExpr:
        """Rewrite an untilded expression in tilded generators"""
        return substitute(expr, self.inverse, self.tilded.presentation)

    def expand(self, expr: FieldExpr) -> FieldExpr:
        """Rewrite a tilded expression back in untilded generators"""
        return substitute(expr, self.definitions, self.source.presentation)


def tilde_roots(n: int, m: int) -> List[Root]:
    """(Delta_0)^+ without theta_0 = alpha_{1,m-1}"""
    return [root for root in zero_roots(n, m) if root != (1, m - 1)]


def tilde_family(n: int, m: int) -> TildeFamily:
    if not 2 <= m <= n + 1:
        raise RangeError(f"tilde families need 2 <= m <= {n + 1}, got {m}")
    roots = tilde_roots(n, m)
    upper = m - 1
    theta = _vector(n, (1, upper))
    source = FreeFieldStack(n, ghost_roots=tuple(roots), pi=True)
    tilded = replace(source, prefix="t")
    P, T = source.presentation, tilded.presentation
    level = shifted_level(n)
    weight_norm = inverse_cartan(n)[upper - 1][upper - 1]
    minus_c = ExponentVector({"c": -1})
    minus_tc = ExponentVector({"tc": -1})

    def pair_terms(prefix: str, exponent: ExponentVector, target: Tuple[int, ...], with_gamma: bool):
        """ordered-pair ghost sums :(gamma) beta beta e^{-c}: hitting target"""
        terms: Dict[Monomial, Fraction] = {}
        for a1 in roots:
            for a2 in roots:
                if with_gamma:
                    for g in roots:
                        vec = tuple(x + y - z for x, y, z in
                                    zip(_vector(n, a1), _vector(n, a2), _vector(n, g)))
                        if vec == target:
                            factors = [(gamma_name(g, prefix), 0), (beta_name(a1, prefix), 0),
                                       (beta_name(a2, prefix), 0)]
                            mono = Monomial(tuple(factors), exponent)
                            terms[mono] = terms.get(mono, 0) + 1
                elif _add_roots(a1, a2, n) == target:
                    mono = Monomial(((beta_name(a1, prefix), 0), (beta_name(a2, prefix), 0)), exponent)
                    terms[mono] = terms.get(mono, 0) + 1
        return terms

    def assemble(presentation: AlgebraPresentation, terms: Dict[Monomial, Fraction]) -> FieldExpr:
        return _canonical(presentation, FieldExpr(terms))

    definitions: Dict[str, FieldExpr] = {}
    inverse: Dict[str, FieldExpr] = {}
    for i in range(1, n + 1):
        shift = level if i == upper else Scalar(0)
        definitions[heis_name(i, "t")] = FieldExpr.generator(heis_name(i)) - FieldExpr.generator("c") * shift
        inverse[heis_name(i)] = FieldExpr.generator(heis_name(i, "t")) + FieldExpr.generator("tc") * shift
    definitions["tc"] = FieldExpr.generator("c")
    inverse["c"] = FieldExpr.generator("tc")

    omega = omega_field(n, upper)
    omega_t = omega_field(n, upper, "t")
    bb = pair_terms("", minus_c, theta, False)
    gbb = pair_terms("", minus_c, theta, True)
    definitions["td"] = (FieldExpr.generator("d") - FieldExpr.generator("c") * (level * weight_norm)
                         + omega * 2 - assemble(P, bb) - assemble(P, gbb))
    bb_t = pair_terms("t", minus_tc, theta, False)
    gbb_t = pair_terms("t", minus_tc, theta, True)
    inverse["d"] = (FieldExpr.generator("td") - FieldExpr.generator("tc") * (level * weight_norm)
                    - omega_t * 2 + assemble(T, bb_t) + assemble(T, gbb_t))

    for alpha in roots:
        shifted = tuple(x + y for x, y in zip(theta, _vector(n, alpha)))
        difference = tuple(x - y for x, y in zip(theta, _vector(n, alpha)))
        half_bb = {mono: Fraction(c, 2) for mono, c in pair_terms("", minus_c, shifted, False).items()}
        half_bb_t = {mono: Fraction(c, 2) for mono, c in pair_terms("t", minus_tc, shifted, False).items()}
        definitions[beta_name(alpha, "t")] = beta(alpha) - assemble(P, half_bb)
        inverse[beta_name(alpha)] = beta(alpha, "t") + assemble(T, half_bb_t)

        single, single_t = {}, {}
        mixed, mixed_t = {}, {}
        for other in roots:
            if _vector(n, other) == difference:
                single[Monomial(((beta_name(other), 0),), minus_c)] = 1
                single_t[Monomial(((beta_name(other, "t"), 0),), minus_tc)] = 1
            for third in roots:
                vec = tuple(y - x for x, y in zip(_vector(n, other), _vector(n, third)))
                if vec == difference:
                    mixed[Monomial(((gamma_name(other), 0), (beta_name(third), 0)), minus_c)] = 1
                    mixed_t[Monomial(((gamma_name(other, "t"), 0), (beta_name(third, "t"), 0)), minus_tc)] = 1
        definitions[gamma_name(alpha, "t")] = gamma(alpha) + assemble(P, single) + assemble(P, mixed)
        inverse[gamma_name(alpha)] = gamma(alpha, "t") - assemble(T, single_t) - assemble(T, mixed_t)
    return TildeFamily(n, m, source, tilded, definitions, inverse, tuple(roots))


def _rename(expr: FieldExpr, rename) -> FieldExpr:
    terms: Dict[Monomial, Scalar] = {}
    for mono, coeff in expr.terms.items():
        factors = tuple((rename(name), order) for name, order in mono.factors)
        exponent = None
        if mono.exponent is not None:
            exponent = ExponentVector({rename(d): v for d, v in mono.exponent.items()})
        key = Monomial(factors, exponent)
        terms[key] = terms.get(key, Scalar(0)) + coeff
    return FieldExpr(terms)


def untilde(expr: FieldExpr) -> FieldExpr:
    """Drop the tilde prefix from every generator and exponent direction"""
    return _rename(expr, lambda name: name[1:] if name.startswith("t") else name)


def tilde(expr: FieldExpr) -> FieldExpr:
    """The same expression written in tilded generators"""
    return _rename(expr, lambda name: "t" + name)


def root_roles(n: int, m: int) -> Dict[Root, str]:
    """Internal/exposed label of every root entering a tilde family"""
    return {root: classify_root(n, root, m - 1) for root in tilde_roots(n, m)}
