import pytest

from errors import OracleTruncationError, PresentationError
from freefields import parse_stack
from modeoracle import FockSpace, commutator_table, mode_oracle
from opecore import canonicalize, ope
from presentation import one
from sl4data import minimal_sl4_presentation


@pytest.mark.parametrize("spec, a, b", [
    ("heis:n=2", "a1", "a2"),
    ("heis:n=1", "no(a1, a1)", "no(a1, a1)"),
    ("heis:n=1", "no(a1, der(1, a1))", "a1"),
    ("ghosts:n=1", "no(B[1,1], G[1,1])", "no(B[1,1], G[1,1])"),
    ("ghosts:n=1", "der(1, B[1,1])", "no(G[1,1], G[1,1])"),
    ("bc:n=1", "no(phi[1,1], psi[1,1])", "no(der(1, phi[1,1]), psi[1,1])"),
    ("pi", "no(c, d)", "no(d, d)"),
])
def test_oracle_matches_engine(spec: str, a: str, b: str) -> None:
    P = parse_stack(spec).presentation
    x, y = canonicalize(P, a), canonicalize(P, b)
    oracle = mode_oracle(P, x, y, truncation=6)
    expected = ope(P, x, y).poles
    assert set(oracle.poles) == set(expected)
    for n, value in expected.items():
        assert oracle.pole(n) == value


def test_truncation_too_small() -> None:
    P = parse_stack("heis:n=1").presentation
    with pytest.raises(OracleTruncationError):
        mode_oracle(P, canonicalize(P, "a1"), canonicalize(P, "der(4, a1)"), truncation=2)


def test_oracle_needs_free_presentation() -> None:
    with pytest.raises(PresentationError):
        FockSpace(minimal_sl4_presentation())


def test_vertex_operators_rejected() -> None:
    P = parse_stack("pi").presentation
    with pytest.raises(PresentationError):
        mode_oracle(P, canonicalize(P, "c"), canonicalize(P, "vop{c: 1}"), truncation=4)


def test_commutator_table() -> None:
    P = parse_stack("ghosts:n=1").presentation
    table = commutator_table(P, canonicalize(P, "B[1,1]"), canonicalize(P, "G[1,1]"), truncation=2)
    # [B_(m), G_(n)] = -delta_{m+n+1, 0} on the vacuum
    assert table[(0, -1)] == one(-1)
    assert table[(1, -2)] == one(-1)
    assert table[(0, 0)].is_zero()
    assert table[(-1, -1)].is_zero()
    assert len(table) == 25
