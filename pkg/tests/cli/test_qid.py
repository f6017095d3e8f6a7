from __future__ import annotations

import json
from pathlib import Path

import pytest

from src.cli.qid import UnknownExpressionError, main, resolve_expression
from src.config import toggles as toggle_module

GOLDEN = Path(__file__).resolve().parents[2] / "assets" / "golden" / "check_all.jsonl"


@pytest.fixture(autouse=True)
def clean_settings(monkeypatch: pytest.MonkeyPatch) -> None:
    for key in toggle_module._KEYS:
        monkeypatch.delenv(key, raising=False)
    toggle_module.get_settings.cache_clear()  # type: ignore[attr-defined]
    yield
    toggle_module.get_settings.cache_clear()  # type: ignore[attr-defined]


def json_lines(text: str) -> list[dict]:
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_expand_phi_json(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["expand", "phi", "--order", "5", "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out) == {
        "name": "phi",
        "scale": 1,
        "min_exp": 0,
        "trunc": 5,
        "coeffs": ["1", "2", "0", "0", "2", "0"],
    }


def test_expand_quotient_text(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["expand", "T21.a", "--order", "5"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "scale=1 min_exp=0 trunc=5"
    assert lines[5] == "q^4: -1"


def test_expand_theta_expression(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["expand", "theta:-q^(1/4),q^(17/4)", "--order", "8", "--format", "json"]) == 0
    record = json.loads(capsys.readouterr().out)
    assert record["scale"] == 4
    assert record["coeffs"][:2] == ["1", "-1"]


def test_resolve_named_fraction_on_half_lattice() -> None:
    series = resolve_expression("A1", 20)
    assert series.scale == 2
    assert series.trunc == 20
    with pytest.raises(UnknownExpressionError):
        resolve_expression("nosuch", 10)


def test_expand_unknown_name(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["expand", "nosuch"]) == 2
    assert "unknown expression" in capsys.readouterr().err
    assert main(["expand", "theta:q"]) == 2


def test_argument_errors_exit_with_usage() -> None:
    with pytest.raises(SystemExit) as excinfo:
        main(["check", "--order", "-4"])
    assert excinfo.value.code == 2
    with pytest.raises(SystemExit):
        main([])


def test_check_unknown_claim(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["check", "T99.x"]) == 2
    assert "T99.x" in capsys.readouterr().err


def test_check_json_report(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["check", "T35", "--order", "60", "--format", "json", "--no-timing"]) == 0
    report, summary = json_lines(capsys.readouterr().out)
    assert report["claim_id"] == "T35"
    assert report["status"] == "pass"
    assert report["order_checked"] == {"lattice": 60, "scale": 1}
    assert summary["record"] == "summary"
    assert summary["passed"] == 1


def test_check_printed_variant_fails(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["check", "RED.T21-printed", "--order", "60", "--format", "json"]) == 1
    report = json_lines(capsys.readouterr().out)[0]
    assert report["status"] == "fail"
    assert report["witness"]["exponent"].isdigit()


def test_check_text_table(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["check", "T21.*", "--order", "40"]) == 0
    out = capsys.readouterr().out
    assert "counterexample" in out
    assert out.rstrip().endswith("confirmed 1, counterexamples 2")


def test_list_claims(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["check", "--list"]) == 0
    out = capsys.readouterr().out
    assert "CF.ENTRY12" in out
    assert "T32.iii-printed" in out


def test_report_path_from_environment(monkeypatch: pytest.MonkeyPatch, tmp_path: Path) -> None:
    target = tmp_path / "reports" / "t36.jsonl"
    monkeypatch.setenv("QID_REPORT_PATH", str(target))
    assert main(["check", "T36", "--order", "30", "--no-timing"]) == 0
    lines = json_lines(target.read_text(encoding="utf-8"))
    assert [line.get("claim_id") for line in lines] == ["T36", None]


def test_format_from_environment(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    monkeypatch.setenv("QID_FORMAT", "json")
    assert main(["expand", "psi", "--order", "3"]) == 0
    assert json.loads(capsys.readouterr().out)["coeffs"] == ["1", "1", "0", "1"]


def test_invalid_environment(monkeypatch: pytest.MonkeyPatch, capsys: pytest.CaptureFixture[str]) -> None:
    monkeypatch.setenv("QID_JOBS", "0")
    assert main(["check", "T35"]) == 2
    assert "Invalid QID configuration" in capsys.readouterr().err


def test_full_registry_matches_golden(capsys: pytest.CaptureFixture[str]) -> None:
    assert main(["check", "--format", "json", "--no-timing", "--jobs", "2"]) == 0
    assert capsys.readouterr().out == GOLDEN.read_text(encoding="utf-8")
