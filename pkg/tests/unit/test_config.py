"""Tests for job configuration precedence and validation."""

import io
import json
from pathlib import Path

import pytest

from tame_sl2.config import JobConfig, load_config_file, resolve_config, use_color
from tame_sl2.errors import PayloadError
from tame_sl2.polyring import RING_Q, RING_QI
from tame_sl2.reduction import ReductionBudget


def _write_config(tmp_path: Path, values: dict) -> Path:
    path = tmp_path / "job.json"
    path.write_text(json.dumps(values), encoding="utf-8")
    return path


def test_defaults() -> None:
    config = resolve_config("reduce", None, {})
    assert config.budget() == ReductionBudget(4, 64, 200)
    assert (config.depth, config.field, config.format, config.horizon) == (1, "q", "json", 3)
    assert config.ring is RING_Q


def test_flags_override_file_values(tmp_path: Path) -> None:
    values = load_config_file(_write_config(tmp_path, {"budget_depth": 2, "field": "qi"}))
    config = resolve_config("verify", values, {"budget_depth": 5, "field": None})
    assert config.budget_depth == 5
    assert config.field == "qi"
    assert config.ring is RING_QI


def test_unknown_keys_are_rejected(tmp_path: Path) -> None:
    with pytest.raises(PayloadError):
        load_config_file(_write_config(tmp_path, {"colour": "red"}))
    with pytest.raises(FileNotFoundError):
        load_config_file(tmp_path / "missing.json")


@pytest.mark.parametrize(
    "values",
    [{"budget_support": 0}, {"horizon": -1}, {"field": "r"}, {"format": "xml"}, {"depth": -2}],
)
def test_invalid_values_are_rejected(values: dict) -> None:
    with pytest.raises(PayloadError):
        JobConfig(command="reduce", **values)


def test_sample_polynomials_are_decoded() -> None:
    config = resolve_config("explore", {"sample_p": ["x1^2", [[[0, 0, 1, 0], "2"]]]}, {})
    x1, _, x3, _ = RING_Q.gens
    assert config.sample_polys() == [x1**2, 2 * x3]


def test_color_respects_no_color(monkeypatch: pytest.MonkeyPatch) -> None:
    class _Tty(io.StringIO):
        def isatty(self) -> bool:
            return True

    monkeypatch.delenv("NO_COLOR", raising=False)
    assert use_color(_Tty())
    assert not use_color(io.StringIO())
    monkeypatch.setenv("NO_COLOR", "1")
    assert not use_color(_Tty())
