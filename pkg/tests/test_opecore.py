import sys
from fractions import Fraction

import pytest

from errors import BudgetExceeded, PairingError, PresentationError
from fieldtext import parse_field
from freefields import fms_images, parse_stack, wakimoto_screenings, wakimoto_stack
from opecore import (RECURSION_LIMIT, OPEEngine, canonicalize, clear_memos, derivative, lambda_bracket, normal_order,
                     nth_product, ope, set_budget, substitute, vop_product, zero_mode_action)
from presentation import ExponentVector, FieldExpr, gen, one, vop
from scalars import K
from settings import DEFAULT_BUDGET


def stack(spec: str):
    return parse_stack(spec).presentation


def test_generator_opes() -> None:
    assert ope(stack("pi"), "c", "d").poles == {2: one(2)}
    assert ope(stack("ghosts:n=3"), "B[1,1]", "G[1,1]").poles == {1: one(-1)}
    assert ope(stack("ghosts:n=3"), "G[1,1]", "B[1,1]").poles == {1: one(1)}
    assert ope(stack("heis:n=3"), "a1", "a1").poles == {2: one(2 * (K + 4))}
    assert ope(stack("heis:n=3"), "a1", "a2").poles == {2: one(-(K + 4))}
    assert ope(stack("heis:n=3"), "a1", "a3").is_zero()


def test_fermion_skew_symmetry() -> None:
    P = stack("bc:n=1")
    assert ope(P, "phi[1,1]", "psi[1,1]").poles == {1: one()}
    assert ope(P, "psi[1,1]", "phi[1,1]").poles == {1: one()}


def test_normal_order_is_commutative_for_bosons() -> None:
    P = stack("heis:n=2")
    assert normal_order(P, "a1", "a2") == normal_order(P, "a2", "a1")
    assert canonicalize(P, "no(a1, a2) - no(a2, a1)").is_zero()


def test_normal_order_of_fermions_anticommutes() -> None:
    P = stack("bc:n=1")
    assert canonicalize(P, "no(phi[1,1], psi[1,1]) + no(psi[1,1], phi[1,1])").is_zero()
    assert canonicalize(P, "no(phi[1,1], phi[1,1])").is_zero()


def test_ghost_quasi_commutativity() -> None:
    P = stack("ghosts:n=1")
    # :BG: - :GB: = sum_j (-1)^j d^(j+1)/(j+1)! B_(j)G
    difference = canonicalize(P, "no(B[1,1], G[1,1]) - no(G[1,1], B[1,1])")
    assert difference == FieldExpr()


def test_virasoro_from_a_free_boson() -> None:
    P = stack("heis:n=1")
    L = canonicalize(P, "1/(4*(k+2))*no(a1, a1)")
    poly = lambda_bracket(P, L, L)
    assert poly.raw[0] == derivative(P, L)
    assert poly.raw[1] == L * 2
    assert poly.raw[3] == one(Fraction(1, 12))
    assert 2 not in poly.raw


def test_derivative_leibniz() -> None:
    P = stack("heis:n=1+ghosts:n=1")
    x = canonicalize(P, "no(B[1,1], G[1,1])")
    assert derivative(P, x) == canonicalize(P, "no(der(1, B[1,1]), G[1,1]) + no(B[1,1], der(1, G[1,1]))")


def test_current_acts_on_vertex() -> None:
    P = stack("pi")
    poles = ope(P, "c", "vop{d: 1}").poles
    assert poles == {1: vop({"d": 1}, 2)}
    assert ope(P, "c", "vop{c: 1}").is_zero()


def test_vertex_products() -> None:
    P = stack("pi")
    result = vop_product(P, "vop{c: 1}", "vop{c: -1}")
    assert result.shift == 0
    assert result.regular == one()
    with pytest.raises(PairingError):
        ope(P, "vop{c: 1/2}", "vop{d: 1/2}")


def test_nth_products() -> None:
    P = stack("ghosts:n=1")
    assert nth_product(P, "B[1,1]", "G[1,1]", 0) == one(-1)
    assert nth_product(P, "B[1,1]", "G[1,1]", 1).is_zero()
    assert nth_product(P, "B[1,1]", "G[1,1]", -1) == canonicalize(P, "no(B[1,1], G[1,1])")


def test_randomized_routes_agree() -> None:
    import random
    P = stack("heis:n=1+ghosts:n=1+pi")
    tree = parse_field("no(no(a1, B[1,1]), no(G[1,1], vop{c: -1})) + der(2, no(d, G[1,1]))")
    plain = canonicalize(P, tree)
    for seed in range(10):
        assert canonicalize(P, tree, random.Random(seed)) == plain


def test_unknown_generator() -> None:
    with pytest.raises(PresentationError):
        canonicalize(stack("pi"), "a1")


def test_zero_mode_needs_an_exponent() -> None:
    P = stack("pi")
    with pytest.raises(PresentationError):
        zero_mode_action(P, "c", "d")
    assert zero_mode_action(P, "vop{c: 1}", "c").is_zero()


@pytest.mark.parametrize("text", ["no(B[1,2], G[2,2])", "no(a1, G[1,1])", "der(1, G[2,3])",
                                  "no(B[1,3], no(G[3,3], G[1,3]))"])
def test_zero_mode_commutes_with_derivative(text: str) -> None:
    P = wakimoto_stack(3).presentation
    x = canonicalize(P, text)
    for screening in wakimoto_screenings(3):
        lhs = zero_mode_action(P, screening.body, derivative(P, x))
        assert lhs == derivative(P, zero_mode_action(P, screening.body, x)), screening.label


def test_first_screening_moves_gamma() -> None:
    P = wakimoto_stack(4).presentation
    S1 = wakimoto_screenings(4)[0]
    assert zero_mode_action(P, S1.body, "G[1,1]") == vop({"a1": -(K + 5).inverse()}, -1)
    assert zero_mode_action(P, S1.body, "G[2,2]").is_zero()


def test_screening_self_product_has_level_dependent_shift() -> None:
    P = wakimoto_stack(3).presentation
    S1 = wakimoto_screenings(3)[0]
    with pytest.raises(PairingError):
        vop_product(P, S1.body, S1.body)


def test_zero_mode_of_odd_screening() -> None:
    P = stack("bc:n=1+pi")
    s = canonicalize(P, "no(phi[1,1], vop{c: 1})")
    assert zero_mode_action(P, s, "psi[1,1]") == vop({"c": 1})
    assert zero_mode_action(P, s, "phi[1,1]").is_zero()


def test_substitute_bosonizes_ghosts() -> None:
    images = fms_images()
    target = stack("pi")
    table = {"B[1,1]": images["beta"], "G[1,1]": images["gamma"]}
    source = stack("ghosts:n=1")
    pairing = substitute(canonicalize(source, "no(B[1,1], G[1,1])"), table, target)
    # :beta gamma: maps to -1/2 (c - d)
    assert pairing == canonicalize(target, "1/2*d - 1/2*c")
    assert ope(target, images["beta"], images["gamma"]).poles == {1: one(-1)}


def test_budget() -> None:
    P = stack("heis:n=2")
    engine = OPEEngine(P, budget=1)
    x = canonicalize(P, "no(a1, no(a2, a1))")
    with pytest.raises(BudgetExceeded):
        with engine.metered():
            engine.bracket_expr(x, x)


def test_set_budget_reaches_live_engines() -> None:
    P = stack("heis:n=1")
    engine = P.engine
    try:
        set_budget(17)
        assert engine.budget == 17
        assert OPEEngine(P).budget == 17
    finally:
        set_budget(DEFAULT_BUDGET)


def test_clear_memos() -> None:
    P = stack("heis:n=2")
    lambda_bracket(P, "no(a1, a2)", "a1")
    assert P.engine._bracket
    clear_memos()
    assert not P.engine._bracket


def test_recursion_limit_is_scoped() -> None:
    before = sys.getrecursionlimit()
    engine = stack("heis:n=1").engine
    with engine.metered():
        assert sys.getrecursionlimit() >= RECURSION_LIMIT
        with engine.metered():
            assert sys.getrecursionlimit() >= RECURSION_LIMIT
    assert sys.getrecursionlimit() == before
    canonicalize(stack("heis:n=1"), "no(a1, no(a1, a1))")
    assert sys.getrecursionlimit() == before
