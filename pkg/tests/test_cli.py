import json

import pytest

from cli import EXIT_ERROR, EXIT_OK, build_parser, datum_name, main, make_config, resolve_stack
from errors import PresentationError
from sl4data import minimal_sl4_presentation


def test_datum_name() -> None:
    assert datum_name("sl2", "prin") == "sl2-prin"
    assert datum_name("sl3-min", None) == "sl3-min"
    assert datum_name(None, "prin") is None


def test_resolve_stack() -> None:
    assert resolve_stack("wmin-sl4") is minimal_sl4_presentation()
    assert resolve_stack("pi").has("c")
    with pytest.raises(PresentationError):
        resolve_stack("lattice")


def test_make_config() -> None:
    args = build_parser().parse_args(["verify", "brst", "--algebra", "sl2", "--f", "prin", "--samples", "5"])
    config = make_config(args)
    assert config.algebra == "sl2-prin"
    assert config.samples == 5
    assert (config.n, config.m) == (3, 4)


def test_ope_text(capsys) -> None:
    assert main(["ope", "c", "d", "--stack", "pi"]) == EXIT_OK
    out = capsys.readouterr().out
    assert "2" in out


def test_ope_json(capsys) -> None:
    assert main(["ope", "B[1,1]", "G[1,1]", "--stack", "ghosts:n=1", "--format", "json"]) == EXIT_OK
    payload = json.loads(capsys.readouterr().out)
    assert payload == {"poles": {"1": "-1"}}


def test_ope_vertex_operators(capsys) -> None:
    assert main(["ope", "vop{c: 1}", "vop{c: -1}", "--stack", "pi", "--format", "json"]) == EXIT_OK
    assert json.loads(capsys.readouterr().out)["shift"] == "0"


def test_ope_errors_exit_with_two(capsys) -> None:
    assert main(["ope", "x", "d", "--stack", "pi"]) == EXIT_ERROR
    assert capsys.readouterr().err.startswith("❌ Error:")
    assert main(["ope", "c", "d", "--stack", "heis"]) == EXIT_ERROR


def test_unknown_campaign(capsys) -> None:
    assert main(["verify", "everything", "--quiet"]) == EXIT_ERROR
    assert "unknown campaign" in capsys.readouterr().err


def test_invalid_config(capsys) -> None:
    assert main(["emit", "grading", "--n", "3", "--m", "9"]) == EXIT_ERROR
    assert "m must lie between" in capsys.readouterr().err


def test_verify_saves_report(tmp_path, capsys) -> None:
    code = main(["verify", "chain", "--format", "json", "--csv", "--quiet", "--out", str(tmp_path)])
    assert code == EXIT_OK
    data = json.loads(capsys.readouterr().out)
    assert data["campaign"] == "chain"
    assert data["summary"]["failed"] == 0
    assert (tmp_path / "chain.json").exists()
    assert (tmp_path / "chain.csv").exists()


def test_emit_writes_file(tmp_path, capsys) -> None:
    target = tmp_path / "grading.json"
    assert main(["emit", "grading", "--n", "5", "--m", "3", "--quiet", "--out", str(target)]) == EXIT_OK
    data = json.loads(target.read_text(encoding="utf-8"))
    assert data["grades"] == [0, 0, 1, 1, 1]
    assert capsys.readouterr().out == ""


def test_bad_subcommand_exits() -> None:
    with pytest.raises(SystemExit):
        main(["tabulate"])
