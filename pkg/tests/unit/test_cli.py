"""Tests for the tame-sl2 CLI argument parsing and commands."""

import json
from pathlib import Path

import pytest

from lib.codec import encode_auto
from tame_sl2 import cli
from tame_sl2.tame import TameAuto


def _write_json(path: Path, payload) -> Path:
    path.write_text(json.dumps(payload), encoding="utf-8")
    return path


def test_parse_args_for_reduce(tmp_path: Path) -> None:
    args = cli.parse_args(["reduce", "example-g", "--budget-depth", "3"])
    assert args.command == "reduce"
    assert args.input == "example-g"
    assert args.budget_depth == 3
    assert not args.batch
    assert not args.no_progress

    source = tmp_path / "map.json"
    args = cli.parse_args(["verify", str(source), "--out", str(tmp_path / "out.json")])
    assert args.input == str(source)
    assert args.output == tmp_path / "out.json"


def test_parse_args_rejects_unknown_command() -> None:
    with pytest.raises(SystemExit):
        cli.parse_args(["rotate"])


def test_examples_prints_named_fixture(capsys: pytest.CaptureFixture[str]) -> None:
    assert cli.main(["examples", "--name", "anick"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert list(payload) == ["anick"]
    assert len(payload["anick"]["components"]) == 4


def test_compose_of_g_and_inverse_is_identity(capsys: pytest.CaptureFixture[str]) -> None:
    assert cli.main(["compose", "example-g", "example-g-inverse"]) == 0
    assert json.loads(capsys.readouterr().out) == encode_auto(TameAuto.identity())


def test_reduce_writes_trace_to_file(tmp_path: Path) -> None:
    out = tmp_path / "trace.json"
    assert cli.main(["reduce", "example-g", "--out", str(out)]) == 0
    trace = json.loads(out.read_text(encoding="utf-8"))
    assert "linear" in trace["verdict"]


def test_verify_reads_a_word_file(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    source = _write_json(tmp_path / "word.json", {"word": [{"elem": {"family": "E24", "P": "x1^2"}}]})
    assert cli.main(["verify", str(source), "--no-progress"]) == 0
    assert json.loads(capsys.readouterr().out)["verdict"] == "Tame"


def test_missing_input_exits_with_one(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    assert cli.main(["reduce", str(tmp_path / "missing.json")]) == 1
    error = json.loads(capsys.readouterr().err)["error"]
    assert error["kind"] == "FileNotFoundError"


def test_domain_error_exits_with_two(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    broken = _write_json(tmp_path / "broken.json", {"components": ["x1", "x2", "x3", "x4 + x1"]})
    assert cli.main(["compose", str(broken), "example-g"]) == 2
    error = json.loads(capsys.readouterr().err)["error"]
    assert error["kind"] == "TameError"
    assert error["witness"] is not None


def test_bad_config_exits_with_one(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    config = _write_json(tmp_path / "job.json", {"budget_depth": 0})
    assert cli.main(["verify", "example-g", "--config", str(config)]) == 1
    assert json.loads(capsys.readouterr().err)["error"]["kind"] == "PayloadError"


def test_resonance_reports_relation(capsys: pytest.CaptureFixture[str]) -> None:
    assert cli.main(["resonance", "4", "1/2"]) == 0
    assert json.loads(capsys.readouterr().out) == {"resonant": True, "p": 1, "q": 2}


def test_grid_exports_dot(capsys: pytest.CaptureFixture[str]) -> None:
    argv = ["grid", "--n", "x2", "--s", "x3", "--e", "x4", "--w", "x1", "--format", "dot"]
    assert cli.main(argv) == 0
    assert capsys.readouterr().out.startswith("graph subcomplex {")


def test_dot_is_refused_where_unsupported(capsys: pytest.CaptureFixture[str]) -> None:
    assert cli.main(["examples", "--format", "dot"]) == 1
    assert "dot" in json.loads(capsys.readouterr().err)["error"]["message"]


def test_degree_report_is_labelled(capsys: pytest.CaptureFixture[str]) -> None:
    assert cli.main(["degree-report", "--samples", "2", "--seed", "1", "--no-progress"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["label"] == "experimental evidence only"
    assert payload["samples"] == 2


def test_classify_linear_word_is_elliptic(tmp_path: Path, capsys: pytest.CaptureFixture[str]) -> None:
    swap = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
    source = _write_json(tmp_path / "tau.json", {"word": [{"orth": swap}]})
    assert cli.main(["classify", str(source)]) == 0
    assert json.loads(capsys.readouterr().out) == {"verdict": "elliptic", "vertex": "[x1]"}
