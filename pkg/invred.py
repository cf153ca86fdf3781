#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Inverse reduction verification campaigns

Each campaign fills a VerificationReport.  Check ids are stable strings so
identical configurations give identical reports.
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Optional, Sequence, Tuple

from brst import NAMED_HOOK, brst_differential, brst_em_field, central_charge, hook_central_charge, j_level
from brst import reduction_datum
from errors import ConfigError, OracleTruncationError, RangeError, UnknownCampaign
from fieldtext import NO, Der, Gen, Vop, lin, parse_expr, to_raw
from freefields import (FreeFieldStack, ScreeningField, beta_name, fms_bosonize, fms_images, fms_screening,
                        gamma_name, heis_name, hook_screenings, omega_field, parse_stack, shifted_level, tilde,
                        tilde_family, wakimoto_screenings, wakimoto_stack, zero_roots)
from modeoracle import mode_oracle
from opecore import expr_parity, substitute, zero_mode_action
from presentation import AlgebraPresentation, ExponentVector, FieldExpr, LambdaPoly, one
from reports import VerificationReport, progress
from rootdata import (BasisElement, basis, cartan_matrix, e, f, good_grading, inner, inverse_cartan, parse_basis,
                      structure_constants, verify_goodness)
from scalars import K
from settings import CAMPAIGNS, RunConfig
from sl4data import (TILDED_WAKIMOTO_SL4, EmbeddingTable, embedding_sl4_table, minimal_central_charge,
                     minimal_sl4_presentation, minimal_sl4_wakimoto_table, wakimoto_sl4_table)


def _difference_witness(actual: LambdaPoly, expected: Dict[int, FieldExpr]) -> str:
    degrees = set(actual.raw) | set(expected)
    parts = []
    for j in sorted(degrees):
        difference = actual.raw.get(j, FieldExpr()) - expected.get(j, FieldExpr())
        if difference:
            parts.append(f"lambda^{j}: {difference}")
    return "; ".join(parts)


# -- kernels ---------------------------------------------------------------
def kernel_check(P: AlgebraPresentation, screenings: Sequence[ScreeningField], table: EmbeddingTable,
                 report: Optional[VerificationReport] = None, prefix: str = "") -> VerificationReport:
    """Every screening zero mode annihilates every image"""
    report = report or VerificationReport("kernels")
    for s in screenings:
        for name, image in table.items():
            with report.timed() as clock:
                value = zero_mode_action(P, s.body, image)
            report.expect_zero(f"{prefix}{s.label}:{name}", value, clock[0])
    return report


def fms_kernel_check(report: Optional[VerificationReport] = None) -> VerificationReport:
    report = report or VerificationReport("kernels")
    P = FreeFieldStack(1, heisenberg=False, pi=True).presentation
    screening = fms_screening()
    images = fms_images()
    kernel_check(P, [screening], EmbeddingTable("FMS images", P, images), report, prefix="fms:")
    outside = zero_mode_action(P, screening.body, FieldExpr.vertex(ExponentVector({"c": -1})))
    report.record("fms:FMS:e^-c-outside", bool(outside), "e^{-c} is annihilated")
    return report


def kernels_report(report: Optional[VerificationReport] = None, verbose: bool = False) -> VerificationReport:
    report = report or VerificationReport("kernels")
    progress("🔎 Wakimoto sl4 images against S1, S2, S3...", verbose)
    table = wakimoto_sl4_table()
    kernel_check(table.presentation, wakimoto_screenings(3), table, report, prefix="wakimoto:")
    progress("🔎 W(sl4, f_min) images against the hook screenings...", verbose)
    table = minimal_sl4_wakimoto_table()
    kernel_check(table.presentation, hook_screenings(3, 3, "bar"), table, report, prefix="minimal:")
    progress("🔎 FMS images against e^{c/2+d/2}...", verbose)
    fms_kernel_check(report)
    return report


# -- bosonize and retilde --------------------------------------------------
def default_source_table(n: int, m: int) -> EmbeddingTable:
    if (n, m) == (3, 4):
        return wakimoto_sl4_table()
    if (n, m) == (3, 3):
        return minimal_sl4_wakimoto_table()
    raise ConfigError(f"no source table for (n, m) = ({n}, {m}); pass one explicitly")


def pipeline_bosonize_retilde(n: int, m: int, table: Optional[EmbeddingTable] = None,
                              report: Optional[VerificationReport] = None
                              ) -> Tuple[EmbeddingTable, VerificationReport]:
    """Bosonize the ghost pair at theta_0 and rewrite the images in tilded fields"""
    if not 2 <= m <= n + 1:
        raise RangeError(f"the pipeline needs 2 <= m <= {n + 1}, got {m}")
    table = table or default_source_table(n, m)
    report = report or VerificationReport("pipeline")
    stack = FreeFieldStack(n, ghost_roots=tuple(zero_roots(n, m)))
    if stack.presentation.names() != table.presentation.names():
        raise ConfigError(f"{table.label} does not live on the free fields of (n, m) = ({n}, {m})")
    family = tilde_family(n, m)
    tilded: Dict[str, FieldExpr] = {}
    for name, image in table.items():
        bosonized, target = fms_bosonize(image, stack, (1, m - 1))
        if target != family.source:
            raise ConfigError("bosonized stack does not match the tilde family")
        rewritten = family.retilde(bosonized)
        tilded[name] = rewritten
        report.expect_equal(f"roundtrip:{n}:{m}:{name}", family.expand(rewritten), bosonized)
    return EmbeddingTable(f"{table.label} (tilded)", family.tilded.presentation, tilded), report


# -- the sl4 embedding -----------------------------------------------------
def closure_images(table: EmbeddingTable, n: int) -> Dict[str, FieldExpr]:
    """Images of every basis element from the simple ones

    e_{i,j} = [e_i, e_{i+1,j}] and f_{i,j} = [f_{i+1,j}, f_i].
    """
    engine = table.presentation.engine
    images = dict(table.images)
    with engine.metered():
        for length in range(1, n):
            for i in range(1, n - length + 1):
                j = i + length
                if str(e(i, j)) not in images:
                    images[str(e(i, j))] = engine.mode_expr(images[str(e(i))], 0, images[str(e(i + 1, j))])
                if str(f(i, j)) not in images:
                    images[str(f(i, j))] = engine.mode_expr(images[str(f(i + 1, j))], 0, images[str(f(i))])
    return {str(x): images[str(x)] for x in basis(n)}


def appendix_closure_images() -> Dict[str, FieldExpr]:
    """All 15 basis images of the sl4 embedding"""
    return closure_images(embedding_sl4_table(), 3)


def affine_bracket_check(P: AlgebraPresentation, images: Dict[str, FieldExpr], n: int,
                         pairs: Iterable[Tuple[BasisElement, BasisElement]],
                         report: VerificationReport, prefix: str = "") -> None:
    """[J^a_lambda J^b] = J^[a,b] + k lambda (a|b) on the images"""
    engine = P.engine
    for a, b in pairs:
        expected: Dict[int, FieldExpr] = {}
        bracket = structure_constants(n, a, b)
        if bracket:
            expected[0] = sum((images[str(y)] * c for y, c in bracket.items()), FieldExpr())
        form = inner(n, a, b)
        if form:
            expected[1] = one(K * form)
        with report.timed() as clock:
            with engine.metered():
                actual = engine.bracket_expr(images[str(a)], images[str(b)])
        witness = _difference_witness(actual, expected)
        report.record(f"{prefix}{a}|{b}", not witness, witness, clock[0])


def verify_appendix_embedding(closure: bool = True, report: Optional[VerificationReport] = None,
                              verbose: bool = False) -> VerificationReport:
    report = report or VerificationReport("appendix-sl4")
    table = embedding_sl4_table()
    progress("🔎 Closing the sl4 images under brackets...", verbose)
    images = closure_images(table, 3)
    elements = basis(3) if closure else [parse_basis(name) for name in table]
    pairs = [(a, b) for position, a in enumerate(elements) for b in elements[position:]]
    progress(f"🔎 Checking {len(pairs)} brackets of V^k(sl4) images...", verbose)
    affine_bracket_check(table.presentation, images, 3, pairs, report, prefix="bracket:")
    return report


# -- composite screening exponent ------------------------------------------
@dataclass
class CompositeScreeningDatum:
    """Linear and ghost parts of the exponent of the composite screening"""
    n: int
    m: int
    linear: FieldExpr
    ghosts: FieldExpr

    @property
    def body(self) -> FieldExpr:
        return self.linear + self.ghosts

    def exponent_vector(self) -> ExponentVector:
        return ExponentVector({mono.factors[0][0]: coeff for mono, coeff in self.linear.terms.items()})


def screening_exponent(n: int, m: int) -> CompositeScreeningDatum:
    if not 2 <= m <= n + 1:
        raise RangeError(f"the composite screening needs 2 <= m <= {n + 1}, got {m}")
    family = tilde_family(n, m)
    upper = m - 1
    norm = inverse_cartan(n)[upper - 1][upper - 1]
    linear = (FieldExpr.generator("c", coeff=(1 - shifted_level(n) * norm) * Fraction(1, 2))
              + FieldExpr.generator("d", coeff=Fraction(1, 2)) - omega_field(n, upper))
    # ghost sums of d-tilde, halved and with the sign flipped
    definition = family.definitions["td"]
    ghosts = FieldExpr({mono: coeff * Fraction(-1, 2) for mono, coeff in definition.terms.items()
                        if mono.exponent is not None})
    family.source.presentation.check_expr(linear + ghosts)
    return CompositeScreeningDatum(n, m, linear, ghosts)


# -- specialization --------------------------------------------------------
def specialization_check(table: EmbeddingTable, n: int,
                         report: Optional[VerificationReport] = None) -> VerificationReport:
    """No poles away from k = -(n+1), and a k-independent term in every image"""
    report = report or VerificationReport("specialization")
    for name, image in table.items():
        poles = [str(c) for c in image.terms.values() if not c.denominator_is_power_of(n + 1)]
        report.record(f"poles:{name}", not poles, "pole at noncritical k: " + ", ".join(poles))
        constant = any(c.is_constant() for c in image.terms.values())
        report.record(f"leading:{name}", constant, "every coefficient depends on k")
    return report


# -- chain counts ----------------------------------------------------------
def chain_signature(n: int, m_target: int) -> Dict[str, object]:
    """Pi and ghost factors picked up walking from m = n+1 down to m_target"""
    if not 1 <= m_target <= n + 1:
        raise RangeError(f"m must satisfy 1 <= m <= {n + 1}, got {m_target}")
    steps = [{"from": m, "to": m - 1, "pi": 1, "ghosts": m - 2} for m in range(n + 1, m_target, -1)]
    return {
        "n": n,
        "m": m_target,
        "steps": steps,
        "pi": sum(step["pi"] for step in steps),
        "ghosts": sum(step["ghosts"] for step in steps),
    }


def chain_report(n: int, m_target: int, report: Optional[VerificationReport] = None) -> VerificationReport:
    report = report or VerificationReport("chain")
    signature = chain_signature(n, m_target)
    report.expect_equal(f"pi:{n}:{m_target}", signature["pi"], n + 1 - m_target)
    report.expect_equal(f"ghosts:{n}:{m_target}", Fraction(signature["ghosts"]),
                        Fraction((n + m_target - 2) * (n + 1 - m_target), 2))
    for step in signature["steps"]:
        m = step["from"]
        # ghosts kept at step m that are not part of the next hook stack
        exposed = len([root for root in zero_roots(n, m) if root != (1, m - 1)]) - len(zero_roots(n, m - 1))
        report.expect_equal(f"step:{n}:{m}", step["ghosts"], exposed)
    return report


def chain_campaign(max_rank: int = 7, report: Optional[VerificationReport] = None) -> VerificationReport:
    report = report or VerificationReport("chain")
    for n in range(1, max_rank + 1):
        for m in range(1, n + 2):
            chain_report(n, m, report)
    return report


# -- tilded families -------------------------------------------------------
def tilde_report(n: int, m: int, report: Optional[VerificationReport] = None) -> VerificationReport:
    report = report or VerificationReport("tilde")
    family = tilde_family(n, m)
    engine = family.source.presentation.engine
    tag = f"{n}:{m}:"
    defs = family.definitions

    def expect_bracket(check_id: str, x: FieldExpr, y: FieldExpr, expected: Dict[int, FieldExpr]) -> None:
        with engine.metered():
            actual = engine.bracket_expr(x, y)
        witness = _difference_witness(actual, expected)
        report.record(tag + check_id, not witness, witness)

    ghosts = [(root, defs[beta_name(root, "t")], defs[gamma_name(root, "t")]) for root in family.roots]
    for (r1, b1, g1), (r2, b2, g2) in itertools.product(ghosts, repeat=2):
        label = f"{r1[0]},{r1[1]}|{r2[0]},{r2[1]}"
        expect_bracket(f"bb:{label}", b1, b2, {})
        expect_bracket(f"gg:{label}", g1, g2, {})
        expect_bracket(f"bg:{label}", b1, g2, {0: one(-1)} if r1 == r2 else {})

    c_t, d_t = defs["tc"], defs["td"]
    heis = [defs[heis_name(i, "t")] for i in range(1, n + 1)]
    cartan = cartan_matrix(n)
    expect_bracket("cc", c_t, c_t, {})
    expect_bracket("cd", c_t, d_t, {1: one(2)})
    expect_bracket("dd", d_t, d_t, {})
    for i, a_i in enumerate(heis, start=1):
        expect_bracket(f"a{i}:c", a_i, c_t, {})
        expect_bracket(f"a{i}:d", a_i, d_t, {})
        for j in range(i, n + 1):
            value = shifted_level(n) * cartan[i - 1][j - 1]
            expect_bracket(f"a{i}:a{j}", a_i, heis[j - 1], {1: one(value)} if value else {})
        for root, b, g in ghosts:
            expect_bracket(f"a{i}:ghosts{root[0]},{root[1]}", a_i, b + g, {})
    for root, b, g in ghosts:
        expect_bracket(f"c:ghosts{root[0]},{root[1]}", c_t, b + g, {})
        expect_bracket(f"d:beta{root[0]},{root[1]}", d_t, b, {})
        expect_bracket(f"d:gamma{root[0]},{root[1]}", d_t, g, {})

    for name, image in defs.items():
        report.expect_equal(f"{tag}inverse:{name}", family.retilde(image), FieldExpr.generator(name))
    for name, image in family.inverse.items():
        report.expect_equal(f"{tag}inverse:{name}", family.expand(image), FieldExpr.generator(name))

    exponent = screening_exponent(n, m)
    fms = FieldExpr.generator("c", coeff=Fraction(1, 2)) + FieldExpr.generator("d", coeff=Fraction(1, 2))
    report.expect_equal(f"{tag}exponent-A", family.expand(tilde(exponent.body)), fms)
    return report


def s_equals_stilde_report(n: int, m: int, report: Optional[VerificationReport] = None) -> VerificationReport:
    """S_i written in tilded fields expands back to S_i for i <= m-2"""
    report = report or VerificationReport("s-equals-stilde")
    family = tilde_family(n, m)
    P = family.source.presentation
    screenings = wakimoto_screenings(n)
    for i in range(1, m - 1):
        s = substitute(screenings[i - 1].body, {}, P)
        report.expect_equal(f"{n}:{m}:S{i}", family.expand(tilde(s)), s)
    return report


# -- BRST and central charges ----------------------------------------------
def brst_report(name: str, report: Optional[VerificationReport] = None,
                verbose: bool = False) -> VerificationReport:
    report = report or VerificationReport("brst")
    R = reduction_datum(name)
    engine = R.presentation.engine
    progress(f"🔎 {name}: building d and L...", verbose)
    d = brst_differential(R)
    L = brst_em_field(R)
    with report.timed() as clock:
        with engine.metered():
            dd = engine.bracket_expr(d, d)
    report.record(f"{name}:d-squared", dd.is_zero(), _difference_witness(dd, {}), clock[0])

    c = central_charge(R)
    with engine.metered():
        dL = engine.derivative_expr(L)
        dd_field = engine.derivative_expr(d)
    progress(f"🔎 {name}: L(z) L(w)...", verbose)
    with report.timed() as clock:
        with engine.metered():
            LL = engine.bracket_expr(L, L)
    expected = {0: dL, 1: L * 2, 3: one(c / 12)}
    for j in sorted(set(LL.raw) | set(expected)):
        report.expect_equal(f"{name}:LL:lambda^{j}", LL.raw.get(j, FieldExpr()), expected.get(j, FieldExpr()),
                            clock[0])
    progress(f"🔎 {name}: L(z) d(w)...", verbose)
    with engine.metered():
        Ld = engine.bracket_expr(L, d)
    expected = {0: dd_field, 1: d}
    for j in sorted(set(Ld.raw) | set(expected)):
        report.expect_equal(f"{name}:Ld:lambda^{j}", Ld.raw.get(j, FieldExpr()), expected.get(j, FieldExpr()))
    return report


def central_charge_report(max_rank: int = 6, report: Optional[VerificationReport] = None) -> VerificationReport:
    report = report or VerificationReport("central-charges")
    report.expect_equal("hook:3:3", hook_central_charge(3, 3), -3 * K * (2 * K + 3) / (K + 4))
    report.expect_equal("minimal-sl4", minimal_central_charge(), hook_central_charge(3, 3))
    for n in range(1, max_rank + 1):
        report.expect_equal(f"affine:{n}", hook_central_charge(n, n + 1), K * (n * (n + 2)) / (K + (n + 1)))
    for name in ("sl2-prin", "sl3-prin", "sl3-min-dynkin", "sl4-min-dynkin"):
        n, m = NAMED_HOOK[name]
        report.expect_equal(f"brst:{name}", central_charge(reduction_datum(name)), hook_central_charge(n, m))
    P = minimal_sl4_presentation()
    J = FieldExpr.generator("J")
    with P.engine.metered():
        jj = P.engine.bracket_expr(J, J).product(1).scalar_value()
    report.expect_equal("j-level:3:3", j_level(3, 3), K + 2)
    report.expect_equal("j-level:presentation", jj, j_level(3, 3))
    return report


# -- randomized engine properties ------------------------------------------
AXIOM_STACK = "heis:n=1+ghosts:n=1+pi+bc:n=1"
VERTEX_LEAVES = (ExponentVector({"c": 1}), ExponentVector({"c": -1}), ExponentVector({"d": 1}))


def random_tree(rng: random.Random, names: Sequence[str], depth: int, vertices: bool = False):
    """Raw expression tree of bounded depth"""
    if depth <= 0 or rng.random() < 0.3:
        if vertices and rng.random() < 0.2:
            return Vop(rng.choice(VERTEX_LEAVES))
        return Gen(rng.choice(names))
    shape = rng.random()
    if shape < 0.5:
        return NO(random_tree(rng, names, depth - 1, vertices), random_tree(rng, names, depth - 1, vertices))
    if shape < 0.7:
        return Der(1, random_tree(rng, names, depth - 1, vertices))
    return lin((rng.choice((1, -1, 2, Fraction(1, 2))), random_tree(rng, names, depth - 1, vertices)),
               (rng.choice((1, -1, 3)), random_tree(rng, names, depth - 1, vertices)))


def random_composite(rng: random.Random, P: AlgebraPresentation, names: Sequence[str]) -> FieldExpr:
    """Nonzero exponential-free normally ordered product of one or two generators"""
    while True:
        pieces = [(rng.choice(names), rng.choice((0, 0, 1))) for _ in range(rng.choice((1, 2)))]
        expr = P.engine.build(pieces, None)
        if expr:
            return expr


def jacobi_defect(P: AlgebraPresentation, a: FieldExpr, b: FieldExpr,
                  c: FieldExpr) -> Dict[Tuple[int, int], FieldExpr]:
    """[a_l [b_m c]] - p [b_m [a_l c]] - [[a_l b]_{l+m} c] as coefficients of l^i m^j"""
    engine = P.engine
    acc: Dict[Tuple[int, int], FieldExpr] = {}

    def add(key, expr):
        acc[key] = acc.get(key, FieldExpr()) + expr

    sign = -1 if expr_parity(P, a) and expr_parity(P, b) else 1
    for j, middle in engine.bracket_expr(b, c).raw.items():
        for i, outer in engine.bracket_expr(a, middle).raw.items():
            add((i, j), outer)
    for i, middle in engine.bracket_expr(a, c).raw.items():
        for j, outer in engine.bracket_expr(b, middle).raw.items():
            add((i, j), outer * -sign)
    for j, middle in engine.bracket_expr(a, b).raw.items():
        for l, outer in engine.bracket_expr(middle, c).raw.items():
            for r in range(l + 1):
                add((j + r, l - r), outer * -comb(l, r))
    return {key: expr for key, expr in acc.items() if expr}


def skew_defect(P: AlgebraPresentation, a: FieldExpr, b: FieldExpr) -> LambdaPoly:
    engine = P.engine
    sign = -1 if expr_parity(P, a) and expr_parity(P, b) else 1
    return engine.bracket_expr(a, b) + engine._skew(engine.bracket_expr(b, a), sign) * -1


def _jacobi_witness(defect: Dict[Tuple[int, int], FieldExpr]) -> str:
    return "; ".join(f"l^{i} m^{j}: {expr}" for (i, j), expr in sorted(defect.items()))


def engine_axioms_report(seed: int = 0, samples: Optional[int] = None, truncation: int = 6,
                         report: Optional[VerificationReport] = None) -> VerificationReport:
    report = report or VerificationReport("engine-axioms")
    samples = samples or 200
    rng = random.Random(seed)
    P = parse_stack(AXIOM_STACK).presentation
    names = P.names()
    engine = P.engine
    for index in range(samples):
        a, b, c = (random_composite(rng, P, names) for _ in range(3))
        with engine.metered():
            skew = skew_defect(P, a, b)
            report.record(f"skew:{index:04d}", skew.is_zero(), _difference_witness(skew, {}))
            jacobi = jacobi_defect(P, a, b, c)
            report.record(f"jacobi:{index:04d}", not jacobi, _jacobi_witness(jacobi))
            poles = engine.bracket_expr(a, b).poles()
        try:
            oracle = mode_oracle(P, a, b, truncation)
        except OracleTruncationError:
            continue
        mismatch = [n for n in sorted(set(oracle.poles) | set(poles)) if oracle.pole(n) != poles.get(n, FieldExpr())]
        report.record(f"oracle:{index:04d}", not mismatch, f"poles {mismatch} differ for {a} and {b}")
    for index in range(samples * 5 // 2):
        tree = random_tree(rng, names, 3, vertices=True)
        with engine.metered():
            plain = engine.canonicalize(tree)
            shuffled = engine.canonicalize(tree, random.Random(rng.random()))
            again = engine.canonicalize(to_raw(plain))
        report.expect_equal(f"confluence:{index:04d}", shuffled, plain)
        report.expect_equal(f"idempotence:{index:04d}", again, plain)
    zero_mode_derivative_checks(rng, max(1, samples // 8), report)
    return report


def zero_mode_derivative_checks(rng: random.Random, samples: int, report: VerificationReport, n: int = 2) -> None:
    """s_(0) commutes with d on random Wakimoto composites"""
    screenings = wakimoto_screenings(n)
    P = wakimoto_stack(n).presentation
    names = P.names()
    engine = P.engine
    for screening in screenings:
        for index in range(samples):
            x = random_composite(rng, P, names)
            with engine.metered():
                lhs = zero_mode_action(P, screening.body, engine.derivative_expr(x))
                rhs = engine.derivative_expr(zero_mode_action(P, screening.body, x))
            report.expect_equal(f"zero-mode-derivative:{screening.label}:{index:04d}", lhs, rhs)


MINIMAL_TRIPLES = (("P[1,-]", "P[2,+]", "E"), ("P[1,+]", "P[2,-]", "F"))


def minimal_jacobi_report(seed: int = 0, samples: int = 20,
                          report: Optional[VerificationReport] = None) -> VerificationReport:
    """Jacobi identity on generator triples of W(sl4, f_min)"""
    report = report or VerificationReport("engine-axioms")
    P = minimal_sl4_presentation()
    rng = random.Random(seed)
    names = P.names()
    triples = list(MINIMAL_TRIPLES)
    while len(triples) < samples:
        triple = tuple(rng.choice(names) for _ in range(3))
        if triple not in triples:
            triples.append(triple)
    for a, b, c in triples:
        with P.engine.metered():
            defect = jacobi_defect(P, FieldExpr.generator(a), FieldExpr.generator(b), FieldExpr.generator(c))
        report.record(f"jacobi-minimal:{a}|{b}|{c}", not defect, _jacobi_witness(defect))
    return report


# -- campaigns -------------------------------------------------------------
TILDE_CASES = ((3, 4), (3, 3), (4, 5), (4, 4))
BRST_CASES = ("sl2-prin", "sl3-min", "sl3-prin", "sl4-min")


def _cases(config: RunConfig, defaults):
    """Explicit --n/--m override the default grid"""
    if (config.n, config.m) != (RunConfig.n, RunConfig.m):
        return ((config.n, config.m),)
    return defaults


def _appendix(report: VerificationReport, verbose: bool) -> None:
    verify_appendix_embedding(report=report, verbose=verbose)
    progress("🔎 Bosonizing and retilding the sl4 Wakimoto images...", verbose)
    tilded, _ = pipeline_bosonize_retilde(3, 4, report=report)
    for name, text in TILDED_WAKIMOTO_SL4.items():
        report.expect_equal(f"tilded:{name}", tilded[name], parse_expr(text, tilded.presentation))
    pipeline_bosonize_retilde(3, 3, report=report)
    specialization_check(embedding_sl4_table(), 3, report)


def run_campaign(name: str, config: Optional[RunConfig] = None, verbose: bool = False) -> VerificationReport:
    if name not in CAMPAIGNS:
        raise UnknownCampaign(f"unknown campaign {name!r}; choose from {', '.join(CAMPAIGNS)}")
    config = config or RunConfig()
    report = VerificationReport(name, config.to_dict(), timing=config.timing)
    progress(f"📥 Campaign {name}: {CAMPAIGNS[name]}", verbose)
    if name == "appendix-sl4":
        _appendix(report, verbose)
    elif name == "tilde":
        for n, m in _cases(config, TILDE_CASES):
            progress(f"🔎 Tilded fields for (n, m) = ({n}, {m})...", verbose)
            tilde_report(n, m, report)
    elif name == "s-equals-stilde":
        for n, m in _cases(config, TILDE_CASES):
            s_equals_stilde_report(n, m, report)
    elif name == "kernels":
        kernels_report(report, verbose)
    elif name == "brst":
        for datum in ((config.algebra,) if config.algebra else BRST_CASES):
            brst_report(datum, report, verbose)
    elif name == "central-charges":
        central_charge_report(report=report)
    elif name == "engine-axioms":
        engine_axioms_report(config.seed, config.samples, config.truncation, report)
        minimal_jacobi_report(config.seed, report=report)
    else:
        chain_campaign(report=report)
    summary = report.summary()
    status = "✅" if report.passed else "❌"
    progress(f"{status} {name}: {summary['passed']}/{summary['total']} checks passed", verbose)
    return report


# -- serializable objects --------------------------------------------------
def emit_object(name: str, n: int, m: int, variant: str = "standard") -> Dict[str, object]:
    if name == "screenings":
        return {"object": name, "n": n, "m": m, "variant": variant,
                "screenings": {s.label: str(s.body) for s in hook_screenings(n, m, variant)}}
    if name == "tilde-family":
        family = tilde_family(n, m)
        return {"object": name, "n": n, "m": m,
                "definitions": {key: str(value) for key, value in family.definitions.items()},
                "inverse": {key: str(value) for key, value in family.inverse.items()}}
    if name == "grading":
        grading = good_grading(n, m)
        return {"object": name, "n": n, "m": m, "variant": variant, "grades": list(grading.grade),
                "zero_roots": [list(root) for root in grading.zero_roots()],
                "good": verify_goodness(n, m, variant)}
    if name == "exponent-A":
        datum = screening_exponent(n, m)
        return {"object": name, "n": n, "m": m, "linear": str(datum.linear), "ghosts": str(datum.ghosts),
                "exponent": {direction: str(value) for direction, value in datum.exponent_vector().items()}}
    raise ConfigError(f"cannot emit {name!r}")
