import json
from fractions import Fraction

import pytest

from errors import ConfigError, RangeError, UnknownCampaign
from fieldtext import parse_expr
from invred import (TILDE_CASES, _cases, chain_campaign, chain_signature, default_source_table, emit_object,
                    engine_axioms_report, fms_kernel_check, minimal_jacobi_report, pipeline_bosonize_retilde,
                    run_campaign, s_equals_stilde_report, screening_exponent, specialization_check, tilde_report)
from presentation import gen
from scalars import K
from settings import RunConfig
from sl4data import TILDED_WAKIMOTO_SL4, embedding_sl4_table


def test_chain_signature() -> None:
    signature = chain_signature(3, 1)
    assert [(s["from"], s["to"], s["ghosts"]) for s in signature["steps"]] == [(4, 3, 2), (3, 2, 1), (2, 1, 0)]
    assert signature["pi"] == 3
    assert signature["ghosts"] == 3
    assert chain_signature(4, 5)["steps"] == []
    with pytest.raises(RangeError):
        chain_signature(3, 5)


def test_chain_campaign() -> None:
    report = chain_campaign(max_rank=5)
    assert report.passed
    assert "ghosts:5:1" in {check.id for check in report.checks}


def test_screening_exponent() -> None:
    datum = screening_exponent(3, 4)
    exponent = datum.exponent_vector()
    assert exponent.get("d") == Fraction(1, 2)
    assert exponent.get("c") == (1 - (K + 4) * Fraction(3, 4)) * Fraction(1, 2)
    assert exponent.get("a3") == Fraction(-3, 4)
    assert exponent.get("a1") == Fraction(-1, 4)
    assert datum.ghosts
    assert all(mono.exponent is not None for mono in datum.ghosts.terms)
    with pytest.raises(RangeError):
        screening_exponent(3, 1)


def test_emit_grading() -> None:
    data = emit_object("grading", 5, 3)
    assert data["grades"] == [0, 0, 1, 1, 1]
    assert data["zero_roots"] == [[1, 1], [1, 2], [2, 2]]
    assert data["good"] is True
    assert emit_object("grading", 5, 3, "bar")["good"] is True


def test_emit_objects_are_json() -> None:
    screenings = emit_object("screenings", 3, 3, "bar")
    assert set(screenings["screenings"]) == {"Q1", "Q2", "Q3"}
    assert screenings["screenings"]["Q3"] == "no(G[1,2], vop{a3: -1/(k+4)})"
    family = emit_object("tilde-family", 3, 3)
    assert family["definitions"]["tc"] == str(gen("c"))
    exponent = emit_object("exponent-A", 3, 3)
    assert exponent["exponent"]["d"] == "1/2"
    for data in (screenings, family, exponent):
        json.dumps(data)
    with pytest.raises(ConfigError):
        emit_object("lattice", 3, 3)


def test_run_campaign_rejects_unknown_names() -> None:
    with pytest.raises(UnknownCampaign):
        run_campaign("everything")


def test_central_charge_campaign() -> None:
    report = run_campaign("central-charges")
    assert report.passed
    assert report.config["n"] == 3
    ids = {check.id for check in report.checks}
    assert {"hook:3:3", "minimal-sl4", "affine:6"} <= ids


def test_explicit_case_overrides_grid() -> None:
    assert _cases(RunConfig(), TILDE_CASES) == TILDE_CASES
    assert _cases(RunConfig(n=4, m=4), TILDE_CASES) == ((4, 4),)


def test_default_source_tables() -> None:
    assert default_source_table(3, 4).label == "Wakimoto sl4"
    with pytest.raises(ConfigError):
        default_source_table(4, 4)


def test_fms_kernel() -> None:
    report = fms_kernel_check()
    assert report.passed, report.failures
    assert len(report.checks) == 3


def test_specialization_of_embedding() -> None:
    report = specialization_check(embedding_sl4_table(), 3)
    assert report.passed, report.failures


def test_engine_axioms_small() -> None:
    report = engine_axioms_report(seed=3, samples=8)
    assert report.passed, report.failures
    assert len([c for c in report.checks if c.id.startswith("confluence:")]) == 20
    assert {c.id for c in report.checks if c.id.startswith("zero-mode-derivative:")} == {
        "zero-mode-derivative:S1:0000", "zero-mode-derivative:S2:0000"}


@pytest.mark.slow
def test_tilde_fields_sl4() -> None:
    report = tilde_report(3, 3)
    assert report.passed, report.failures


@pytest.mark.slow
def test_s_equals_stilde_sl4() -> None:
    report = s_equals_stilde_report(3, 4)
    assert report.passed, report.failures
    assert [c.id for c in report.checks] == ["3:4:S1", "3:4:S2"]


@pytest.mark.slow
def test_minimal_jacobi() -> None:
    report = minimal_jacobi_report(samples=4)
    assert report.passed, report.failures


@pytest.mark.slow
@pytest.mark.parametrize("campaign", ["kernels", "appendix-sl4"])
def test_sl4_campaigns(campaign: str) -> None:
    report = run_campaign(campaign)
    assert report.passed, report.failures


@pytest.mark.slow
def test_brst_campaign_single_datum() -> None:
    report = run_campaign("brst", RunConfig(algebra="sl3-min"))
    assert report.passed, report.failures
    assert "sl3-min:d-squared" in {check.id for check in report.checks}


@pytest.mark.slow
def test_tilded_wakimoto_images() -> None:
    tilded, report = pipeline_bosonize_retilde(3, 4)
    assert report.passed, report.failures
    for name, text in TILDED_WAKIMOTO_SL4.items():
        assert tilded[name] == parse_expr(text, tilded.presentation), name
