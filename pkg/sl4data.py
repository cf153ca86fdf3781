#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Closed tables for sl4: the Wakimoto realization, the minimal W-algebra
W^k(sl4, f_min) with its Wakimoto images, and the inverse reduction
embedding of V^k(sl4) into W^k(sl4, f_min) ⊗ Pi ⊗ two ghost pairs.

Tables are kept as text in the expression grammar and canonicalized on
first use.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterator, List, Mapping, Tuple

from fieldtext import parse_field
from freefields import FreeFieldStack, hook_stack, wakimoto_stack
from opecore import canonicalize
from presentation import EVEN, AlgebraPresentation, FieldExpr, GeneratorDecl, LambdaPoly, tensor
from scalars import K


@dataclass
class EmbeddingTable:
    """Images of named generators inside a target presentation"""
    label: str
    presentation: AlgebraPresentation
    images: Dict[str, FieldExpr]

    def __getitem__(self, name: str) -> FieldExpr:
        return self.images[name]

    def __iter__(self) -> Iterator[str]:
        return iter(self.images)

    def __len__(self) -> int:
        return len(self.images)

    def items(self):
        return self.images.items()

    def with_image(self, name: str, expr: FieldExpr) -> "EmbeddingTable":
        images = dict(self.images)
        images[name] = expr
        return EmbeddingTable(self.label, self.presentation, images)

    def to_text(self) -> Dict[str, str]:
        return {name: str(expr) for name, expr in self.images.items()}


def _table(label: str, P: AlgebraPresentation, entries: Mapping[str, str]) -> EmbeddingTable:
    return EmbeddingTable(label, P, {name: canonicalize(P, parse_field(text)) for name, text in entries.items()})


# -- Wakimoto realization of V^k(sl4) --------------------------------------
WAKIMOTO_SL4 = {
    "e[1,1]": "B[1,1] + no(B[1,2], G[2,2]) + no(B[1,3], G[2,3])",
    "e[2,2]": "B[2,2] + no(B[2,3], G[3,3])",
    "e[3,3]": "B[3,3]",
    "h[1]": "a1 + 2*no(B[1,1], G[1,1]) - no(B[2,2], G[2,2]) + no(B[1,2], G[1,2])"
            " - no(B[2,3], G[2,3]) + no(B[1,3], G[1,3])",
    "h[2]": "a2 - no(B[1,1], G[1,1]) + 2*no(B[2,2], G[2,2]) - no(B[3,3], G[3,3])"
            " + no(B[1,2], G[1,2]) + no(B[2,3], G[2,3])",
    "h[3]": "a3 - no(B[2,2], G[2,2]) + 2*no(B[3,3], G[3,3]) - no(B[1,2], G[1,2])"
            " + no(B[2,3], G[2,3]) + no(B[1,3], G[1,3])",
    "f[1,1]": "-no(a1, G[1,1]) - no(B[1,1], no(G[1,1], G[1,1])) + no(B[2,2], G[1,2])"
              " + no(B[2,3], G[1,3]) - (k+2)*der(1, G[1,1])",
    "f[2,2]": "-no(a2, G[2,2]) - no(B[2,2], no(G[2,2], G[2,2])) + no(B[1,1], no(G[1,1], G[2,2]))"
              " - no(B[1,2], no(G[2,2], G[1,2])) - no(B[1,1], G[1,2]) + no(B[3,3], G[2,3])"
              " - (k+1)*der(1, G[2,2])",
    "f[3,3]": "-no(a3, G[3,3]) - no(B[3,3], no(G[3,3], G[3,3])) + no(B[2,2], no(G[2,2], G[3,3]))"
              " + no(B[1,2], no(G[3,3], G[1,2])) - no(B[2,3], no(G[3,3], G[2,3]))"
              " - no(B[1,3], no(G[3,3], G[1,3])) - no(B[2,2], G[2,3]) - no(B[1,2], G[1,3])"
              " - k*der(1, G[3,3])",
}


@lru_cache(maxsize=None)
def wakimoto_sl4_table() -> EmbeddingTable:
    return _table("Wakimoto sl4", wakimoto_stack(3).presentation, WAKIMOTO_SL4)


# Wakimoto images after bosonizing the theta pair, in tilded fields
TILDED_WAKIMOTO_SL4 = {
    "e[1,1]": "no(tG[2,3], vop{tc: 1})",
    "e[2,2]": "tB[2,2] + no(tB[2,3], tG[3,3])",
    "e[3,3]": "tB[3,3]",
    "h[2]": "ta2 - no(tB[1,1], tG[1,1]) + no(tB[1,2], tG[1,2]) + 2*no(tB[2,2], tG[2,2])"
            " + no(tB[2,3], tG[2,3]) - no(tB[3,3], tG[3,3])",
}


# -- W^k(sl4, f_min) --------------------------------------------------------
MINIMAL_GENERATORS = (
    GeneratorDecl("L", EVEN, Fraction(2), "abstract"),
    GeneratorDecl("H", EVEN, Fraction(1), "abstract"),
    GeneratorDecl("E", EVEN, Fraction(1), "abstract"),
    GeneratorDecl("F", EVEN, Fraction(1), "abstract"),
    GeneratorDecl("J", EVEN, Fraction(1), "abstract"),
    GeneratorDecl("P[1,+]", EVEN, Fraction(3, 2), "abstract"),
    GeneratorDecl("P[1,-]", EVEN, Fraction(3, 2), "abstract"),
    GeneratorDecl("P[2,+]", EVEN, Fraction(3, 2), "abstract"),
    GeneratorDecl("P[2,-]", EVEN, Fraction(3, 2), "abstract"),
)

P_FIELDS = ("P[1,+]", "P[1,-]", "P[2,+]", "P[2,-]")

# (a, b) -> {lambda power: coefficient text}
MINIMAL_BRACKETS: Dict[Tuple[str, str], Dict[int, str]] = {
    ("L", "L"): {0: "der(1, L)", 1: "2*L", 3: "-k*(2*k+3)/(4*(k+4))"},
    ("H", "H"): {1: "2*(k+1)"},
    ("H", "E"): {0: "2*E"},
    ("H", "F"): {0: "-2*F"},
    ("E", "F"): {0: "H", 1: "k+1"},
    ("J", "J"): {1: "k+2"},
    ("H", "P[1,+]"): {0: "P[1,+]"},
    ("H", "P[1,-]"): {0: "P[1,-]"},
    ("H", "P[2,+]"): {0: "-P[2,+]"},
    ("H", "P[2,-]"): {0: "-P[2,-]"},
    ("J", "P[1,+]"): {0: "P[1,+]"},
    ("J", "P[2,+]"): {0: "P[2,+]"},
    ("J", "P[1,-]"): {0: "-P[1,-]"},
    ("J", "P[2,-]"): {0: "-P[2,-]"},
    ("E", "P[2,-]"): {0: "P[1,-]"},
    ("E", "P[2,+]"): {0: "-P[1,+]"},
    ("F", "P[1,-]"): {0: "P[2,-]"},
    ("F", "P[1,+]"): {0: "-P[2,+]"},
    ("P[1,-]", "P[1,+]"): {0: "2*no(E, J) - (k+2)*der(1, E)", 1: "-2*(k+2)*E"},
    ("P[2,-]", "P[2,+]"): {0: "2*no(F, J) - (k+2)*der(1, F)", 1: "-2*(k+2)*F"},
    ("P[1,-]", "P[2,+]"): {
        0: "(k+4)*L - 2*no(E, F) - 1/2*no(H, H) + no(H, J) - 3/2*no(J, J)"
           " - k/2*der(1, H) + (k+1)*der(1, J)",
        1: "2*(k+1)*J - (k+2)*H",
        2: "-(k+1)*(k+2)",
    },
    ("P[1,+]", "P[2,-]"): {
        0: "-(k+4)*L + 2*no(E, F) + 1/2*no(H, H) + no(H, J) + 3/2*no(J, J)"
           " + k/2*der(1, H) + (k+1)*der(1, J)",
        1: "2*(k+1)*J + (k+2)*H",
        2: "(k+1)*(k+2)",
    },
}


def minimal_central_charge():
    """-3k(2k+3)/(k+4)"""
    return -3 * K * (2 * K + 3) / (K + 4)


@lru_cache(maxsize=None)
def minimal_sl4_presentation() -> AlgebraPresentation:
    bare = AlgebraPresentation("W(sl4, f_min) generators", MINIMAL_GENERATORS)
    brackets: Dict[Tuple[str, str], LambdaPoly] = {}
    for pair, raw in MINIMAL_BRACKETS.items():
        brackets[pair] = LambdaPoly({j: canonicalize(bare, parse_field(text)) for j, text in raw.items()})
    for name in ("H", "E", "F", "J"):
        brackets[("L", name)] = LambdaPoly({0: FieldExpr.generator(name, 1), 1: FieldExpr.generator(name)})
    for name in P_FIELDS:
        brackets[("L", name)] = LambdaPoly({0: FieldExpr.generator(name, 1),
                                            1: FieldExpr.generator(name, coeff=Fraction(3, 2))})
    return AlgebraPresentation("W(sl4, f_min)", MINIMAL_GENERATORS, brackets)


MINIMAL_WAKIMOTO = {
    "E": "B[2,2]",
    "J": "1/2*a1 - 1/2*a3 + no(B[1,1], G[1,1]) + no(B[1,2], G[1,2])",
    "H": "a2 - no(B[1,1], G[1,1]) + no(B[1,2], G[1,2]) + 2*no(B[2,2], G[2,2])",
    "P[1,+]": "-no(B[1,1], B[2,2]) + no(B[1,2], no(B[1,2], G[1,2])) - no(a3, B[1,2])"
              " - (k+2)*der(1, B[1,2])",
}


@lru_cache(maxsize=None)
def minimal_sl4_wakimoto_table() -> EmbeddingTable:
    return _table("Wakimoto W(sl4, f_min)", hook_stack(3, 3).presentation, MINIMAL_WAKIMOTO)


# -- V^k(sl4) inside W^k(sl4, f_min) ⊗ Pi ⊗ ghosts -------------------------
EMBEDDING_STACK = FreeFieldStack(3, heisenberg=False, ghost_roots=((2, 3), (3, 3)), pi=True)

EMBEDDING_SL4 = {
    "e[1,1]": "no(G[2,3], vop{c: 1})",
    "e[2,2]": "E + no(B[2,3], G[3,3])",
    "e[3,3]": "B[3,3]",
    "h[1]": "3/2*J - 1/2*H + 1/2*d - (3*k+16)/8*c - no(B[2,3], G[2,3])",
    "h[2]": "H + no(B[2,3], G[2,3]) - no(B[3,3], G[3,3])",
    "h[3]": "-1/2*J - 1/2*H + 1/2*d + (5*k+16)/8*c + no(B[2,3], G[2,3]) + 2*no(B[3,3], G[3,3])",
    "f[1,1]": "P[1,-] - no(E, no(B[3,3], vop{c: -1})) + 1/2*no(3*J - H, no(B[2,3], vop{c: -1}))"
              " - (11*k+16)/8*no(B[2,3], no(c, vop{c: -1})) + 1/2*no(B[2,3], no(d, vop{c: -1}))"
              " + (k+1)*no(der(1, B[2,3]), vop{c: -1})",
    "f[2,2]": "F + no(B[3,3], G[2,3])",
    "f[3,3]": "-no(P[1,+], vop{c: -1}) - no(E, G[2,3]) + 1/2*no(J + H, G[3,3])"
              " - no(B[3,3], no(G[3,3], G[3,3])) - (5*k+16)/8*no(G[3,3], c) - 1/2*no(G[3,3], d)"
              " - no(B[2,3], no(G[3,3], G[2,3])) + k*der(1, G[3,3])",
}


@lru_cache(maxsize=None)
def embedding_presentation() -> AlgebraPresentation:
    return tensor(minimal_sl4_presentation(), EMBEDDING_STACK.presentation,
                  label="W(sl4, f_min) ⊗ Pi ⊗ ghosts[2,3 3,3]")


@lru_cache(maxsize=None)
def embedding_sl4_table() -> EmbeddingTable:
    return _table("V(sl4) -> W(sl4, f_min) ⊗ Pi ⊗ ghosts", embedding_presentation(), EMBEDDING_SL4)


def simple_generators() -> List[str]:
    return list(EMBEDDING_SL4)
