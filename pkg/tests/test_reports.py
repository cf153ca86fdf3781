import json

from presentation import gen, one
from reports import FAIL, PASS, VerificationReport, progress


def sample_report(timing: bool = False) -> VerificationReport:
    report = VerificationReport("demo", {"n": 3}, timing=timing)
    report.expect_zero("b:zero", gen("c") - gen("c"))
    report.expect_equal("a:fields", gen("c") * 2, gen("c") + gen("d"))
    report.expect_equal("c:scalars", 3, 3, millis=1.5)
    return report


def test_record_statuses() -> None:
    report = sample_report()
    assert [check.status for check in report.checks] == [PASS, FAIL, PASS]
    assert not report.passed
    assert [check.id for check in report.failures] == ["a:fields"]
    assert report.failures[0].witness == str(gen("c") - gen("d"))
    assert report.summary() == {"total": 3, "passed": 2, "failed": 1}


def test_passed_checks_carry_no_witness() -> None:
    report = VerificationReport("demo")
    report.record("x", True, witness="ignored")
    assert report.checks[0].witness is None
    assert report.passed


def test_timing_is_dropped_unless_requested() -> None:
    assert sample_report().checks[2].millis is None
    assert sample_report(timing=True).checks[2].millis == 1.5
    report = VerificationReport("demo", timing=True)
    with report.timed() as clock:
        pass
    assert clock[0] is not None and clock[0] >= 0


def test_json_is_sorted_and_stable() -> None:
    first, second = sample_report().to_json(), sample_report().to_json()
    assert first == second
    data = json.loads(first)
    assert [check["id"] for check in data["checks"]] == ["a:fields", "b:zero", "c:scalars"]
    assert data["config"] == {"n": 3}
    assert data["summary"]["failed"] == 1


def test_merge_prefixes_ids() -> None:
    report = VerificationReport("outer")
    report.merge(sample_report(), "inner:")
    assert report.checks[0].id == "inner:b:zero"
    assert len(report.checks) == 3


def test_dataframe_and_text() -> None:
    df = sample_report().to_dataframe()
    assert list(df.columns) == ["id", "status", "witness", "millis"]
    assert list(df["status"]) == [FAIL, PASS, PASS]
    text = sample_report().to_text()
    assert text.splitlines()[0] == "demo: ❌ failed (2/3)"
    assert "millis" not in text
    empty = VerificationReport("empty")
    assert empty.to_text() == "empty: ✅ passed (0/0)"


def test_save_with_csv(tmp_path) -> None:
    report = sample_report()
    report.expect_equal("d:one", one(), one())
    target = report.save(tmp_path / "out", csv=True)
    assert target == tmp_path / "out" / "demo.json"
    assert json.loads(target.read_text(encoding="utf-8")) == report.to_dict()
    csv_lines = (tmp_path / "out" / "demo.csv").read_text(encoding="utf-8").splitlines()
    assert csv_lines[0] == "id,status,witness,millis"
    assert len(csv_lines) == 5


def test_progress_goes_to_stderr(capsys) -> None:
    progress("🔎 working")
    progress("hidden", verbose=False)
    captured = capsys.readouterr()
    assert captured.out == ""
    assert captured.err == "🔎 working\n"
