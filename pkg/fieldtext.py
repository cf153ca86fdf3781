#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Text form of scalars and field expressions

    scalars   2, -3/4, k, -3*k*(2*k+3)/(k+4), (k+4)^2
    fields    a1, B[1,2], G[2,3], P[1,+], der(2, c), no(B[1,1], G[1,1]),
              vop{a1: -1/(k+4), c: 1}, scalar-linear combinations

``pretty`` prints canonical FieldExprs in a form ``parse_field`` reads back.
"""

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple, Union

from errors import ParseError
from presentation import ExponentVector, FieldExpr, Monomial
from scalars import ONE, Scalar

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*(?:\[[^\]]*\])?)
  | (?P<pow>\*\*|\^)
  | (?P<op>[-+*/(){}:,])
""", re.VERBOSE)

KEYWORDS = ("der", "no", "vop")


# -- raw expression trees --------------------------------------------------
@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Der:
    order: int
    body: "Node"


@dataclass(frozen=True)
class NO:
    left: "Node"
    right: "Node"


@dataclass(frozen=True)
class Vop:
    exponent: ExponentVector


@dataclass(frozen=True)
class Lin:
    terms: Tuple[Tuple[Scalar, "Node"], ...]


Node = Union[One, Gen, Der, NO, Vop, Lin]


def lin(*terms: Tuple[Scalar, Node]) -> Lin:
    return Lin(tuple((Scalar.coerce(c), node) for c, node in terms))


# -- tokenizer -------------------------------------------------------------
def _tokenize(text: str) -> List[Tuple[str, str, int, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if not match:
            raise ParseError("unexpected character", text, (pos, pos + 1))
        kind = match.lastgroup
        if kind != "ws":
            value = match.group(kind)
            if kind == "name":
                value = re.sub(r"\s+", "", value)
            tokens.append((kind, value, match.start(), match.end()))
        pos = match.end()
    tokens.append(("end", "", len(text), len(text)))
    return tokens


class _Parser:
    """Recursive descent; values are Scalar (pure numbers) or Node"""

    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    # -- token helpers ----------------------------------------------------
    def peek(self, offset: int = 0):
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def next(self):
        token = self.peek()
        self.index += 1
        return token

    def fail(self, message: str, token=None):
        token = token or self.peek()
        raise ParseError(message, self.text, (token[2], max(token[3], token[2] + 1)))

    def expect(self, value: str):
        token = self.next()
        if token[1] != value or token[0] not in ("op",):
            self.fail(f"expected {value!r}", token)
        return token

    def at(self, value: str) -> bool:
        token = self.peek()
        return token[0] == "op" and token[1] == value

    # -- grammar ----------------------------------------------------------
    def parse(self):
        value = self.expr()
        if self.peek()[0] != "end":
            self.fail("unexpected trailing input")
        return value

    def expr(self):
        value = self.term()
        while self.at("+") or self.at("-"):
            sign = self.next()[1]
            right = self.term()
            value = _combine(value, right if sign == "+" else _negate(right))
        return value

    def term(self):
        value = self.unary()
        while self.at("*") or self.at("/"):
            op_token = self.next()
            right = self.unary()
            if op_token[1] == "*":
                value = self._multiply(value, right, op_token)
            else:
                if not isinstance(right, Scalar):
                    self.fail("cannot divide by a field", op_token)
                if not right:
                    self.fail("division by zero", op_token)
                value = self._multiply(value, right.inverse(), op_token)
        return value

    def _multiply(self, left, right, token):
        if isinstance(left, Scalar) and isinstance(right, Scalar):
            return left * right
        if isinstance(left, Scalar):
            return _scale(right, left)
        if isinstance(right, Scalar):
            return _scale(left, right)
        self.fail("product of two fields; use no(X, Y)", token)

    def unary(self):
        if self.at("-"):
            self.next()
            return _negate(self.unary())
        if self.at("+"):
            self.next()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] == "pow":
            token = self.next()
            negative = False
            if self.at("-"):
                self.next()
                negative = True
            exponent_token = self.next()
            if exponent_token[0] != "int":
                self.fail("exponent must be an integer", exponent_token)
            if not isinstance(base, Scalar):
                self.fail("powers of fields are not defined", token)
            exponent = int(exponent_token[1])
            return base ** (-exponent if negative else exponent)
        return base

    def atom(self):
        token = self.peek()
        kind, value = token[0], token[1]
        if kind == "int":
            self.next()
            return Scalar(int(value))
        if kind == "op" and value == "(":
            self.next()
            inner = self.expr()
            self.expect(")")
            return inner
        if kind == "name":
            self.next()
            if value == "k":
                return Scalar.k()
            if value == "der" and self.at("("):
                return self.derivative()
            if value == "no" and self.at("("):
                return self.normal_order()
            if value == "vop" and self.at("{"):
                return self.vertex()
            return Gen(value)
        self.fail("expected a number, k, a generator or ( ... )")

    def derivative(self):
        self.expect("(")
        order_token = self.next()
        if order_token[0] != "int":
            self.fail("derivative order must be a non-negative integer", order_token)
        self.expect(",")
        body = _as_node(self.expr())
        self.expect(")")
        return Der(int(order_token[1]), body)

    def normal_order(self):
        self.expect("(")
        left = _as_node(self.expr())
        self.expect(",")
        right = _as_node(self.expr())
        self.expect(")")
        return NO(left, right)

    def vertex(self):
        self.expect("{")
        coefficients = {}
        while not self.at("}"):
            token = self.next()
            if token[0] != "name":
                self.fail("expected an exponent direction", token)
            self.expect(":")
            value = self.expr()
            if not isinstance(value, Scalar):
                self.fail("exponent coefficients must be scalars", token)
            coefficients[token[1]] = coefficients.get(token[1], Scalar(0)) + value
            if not self.at("}"):
                self.expect(",")
        self.expect("}")
        return Vop(ExponentVector(coefficients))


def _as_node(value) -> Node:
    if isinstance(value, Scalar):
        return Lin(((value, One()),))
    return value


def _scale(node: Node, factor: Scalar) -> Node:
    if isinstance(node, Lin):
        return Lin(tuple((c * factor, n) for c, n in node.terms))
    return Lin(((factor, node),))


def _negate(value):
    if isinstance(value, Scalar):
        return -value
    return _scale(value, Scalar(-1))


def _combine(left, right):
    if isinstance(left, Scalar) and isinstance(right, Scalar):
        return left + right
    left, right = _as_node(left), _as_node(right)
    left_terms = left.terms if isinstance(left, Lin) else ((ONE, left),)
    right_terms = right.terms if isinstance(right, Lin) else ((ONE, right),)
    return Lin(left_terms + right_terms)


# -- public parsing API ----------------------------------------------------
def parse_scalar(text: str) -> Scalar:
    value = _Parser(text).parse()
    if not isinstance(value, Scalar):
        raise ParseError("expected a scalar expression", text, (0, len(text)))
    return value


def parse_field(text: str) -> Node:
    """Raw expression tree; canonicalize it with opecore.canonicalize"""
    if not text or not text.strip():
        raise ParseError("empty expression", text, (0, 0))
    return _as_node(_Parser(text).parse())


def parse_expr(text: str, presentation) -> FieldExpr:
    from opecore import canonicalize
    return canonicalize(presentation, parse_field(text))


# -- printing --------------------------------------------------------------
def format_factor(name: str, order: int) -> str:
    return name if order == 0 else f"der({order}, {name})"


def format_exponent(exponent: ExponentVector) -> str:
    body = ", ".join(f"{direction}: {value}" for direction, value in exponent.items())
    return f"vop{{{body}}}"


def format_monomial(mono: Monomial) -> str:
    pieces = [format_factor(name, order) for name, order in mono.factors]
    if mono.exponent is not None:
        pieces.append(format_exponent(mono.exponent))
    if not pieces:
        return "1"
    text = pieces[-1]
    for piece in reversed(pieces[:-1]):
        text = f"no({piece}, {text})"
    return text


def _format_term(mono: Monomial, coeff: Scalar) -> Tuple[str, str]:
    sign = "+"
    if coeff.is_constant() and coeff.constant() < 0:
        sign, coeff = "-", -coeff
    if mono.is_identity():
        text = str(coeff)
        if not coeff.is_constant():
            text = f"({text})"
        return sign, text
    body = format_monomial(mono)
    if coeff == 1:
        return sign, body
    text = str(coeff)
    if not coeff.is_constant():
        text = f"({text})"
    return sign, f"{text}*{body}"


def pretty(expr: FieldExpr) -> str:
    items = expr.sorted_items()
    if not items:
        return "0"
    if len(items) == 1 and items[0][0].is_identity():
        return str(items[0][1])
    text = ""
    for position, (mono, coeff) in enumerate(items):
        sign, body = _format_term(mono, coeff)
        if position == 0:
            text = body if sign == "+" else f"-{body}"
        else:
            text += f" {sign} {body}"
    return text


def pretty_poles(poles) -> str:
    """{n: expr} map in the text form used by the command line"""
    body = ", ".join(f"{n}: {pretty(expr)}" for n, expr in sorted(poles.items()))
    return f"{{{body}}}"


def to_raw(expr: FieldExpr) -> Node:
    """Raw tree of a canonical expression (right-nested normal ordering)"""
    terms = []
    for mono, coeff in expr.sorted_items():
        nodes: List[Node] = [Gen(name) if order == 0 else Der(order, Gen(name)) for name, order in mono.factors]
        if mono.exponent is not None:
            nodes.append(Vop(mono.exponent))
        node: Node = nodes[-1] if nodes else One()
        for piece in reversed(nodes[:-1]):
            node = NO(piece, node)
        terms.append((coeff, node))
    return Lin(tuple(terms))
