"""Job configuration: defaults, an optional JSON file and command-line flags, in that order."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, fields
from pathlib import Path
from typing import Any, Mapping, TextIO

from sympy.polys.rings import PolyRing

from lib.codec import decode_poly
from tame_sl2.errors import PayloadError
from tame_sl2.polyring import Poly, ring_for
from tame_sl2.reduction import ReductionBudget

FORMATS = ("json", "dot", "pretty")
FIELDS = ("q", "qi")
_POSITIVE = ("budget_depth", "budget_support", "max_steps", "horizon")


@dataclass(frozen=True)
class JobConfig:
    command: str
    input: str | None = None
    budget_depth: int = 4
    budget_support: int = 64
    max_steps: int = 200
    depth: int = 1
    sample_p: tuple = ()
    field: str = "q"
    output: str | None = None
    format: str = "json"
    horizon: int = 3

    def __post_init__(self) -> None:
        for name in _POSITIVE:
            value = getattr(self, name)
            if not isinstance(value, int) or isinstance(value, bool) or value <= 0:
                raise PayloadError(f"{name} must be a positive integer, got {value!r}")
        if not isinstance(self.depth, int) or self.depth < 0:
            raise PayloadError(f"depth must be a non-negative integer, got {self.depth!r}")
        if self.field not in FIELDS:
            raise PayloadError(f"field must be one of {', '.join(FIELDS)}, got {self.field!r}")
        if self.format not in FORMATS:
            raise PayloadError(f"format must be one of {', '.join(FORMATS)}, got {self.format!r}")

    @property
    def ring(self) -> PolyRing:
        return ring_for(self.field)  # type: ignore[arg-type]

    def budget(self) -> ReductionBudget:
        return ReductionBudget(
            depth=self.budget_depth, support=self.budget_support, max_steps=self.max_steps
        )

    def sample_polys(self) -> list[Poly]:
        return [decode_poly(item, self.ring) for item in self.sample_p]


CONFIG_KEYS = frozenset(f.name for f in fields(JobConfig)) - {"command"}


def load_config_file(path: Path) -> dict[str, Any]:
    if not path.exists():
        raise FileNotFoundError(f"Config file not found: {path}")
    try:
        data = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise PayloadError(f"config file is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise PayloadError("config file must contain a JSON object")
    unknown = sorted(set(data) - CONFIG_KEYS)
    if unknown:
        raise PayloadError(f"unknown config keys: {', '.join(unknown)}")
    return data


def resolve_config(
    command: str, file_values: Mapping[str, Any] | None, flag_values: Mapping[str, Any]
) -> JobConfig:
    """Merge config-file values and explicit flags (``None`` means not given) over the defaults."""

    merged: dict[str, Any] = dict(file_values or {})
    merged.update({k: v for k, v in flag_values.items() if v is not None and k in CONFIG_KEYS})
    if "sample_p" in merged:
        if not isinstance(merged["sample_p"], (list, tuple)):
            raise PayloadError("sample_p must be a list of polynomials")
        merged["sample_p"] = tuple(merged["sample_p"])
    return JobConfig(command=command, **merged)


def use_color(stream: TextIO) -> bool:
    """ANSI styling only on terminals, and never when NO_COLOR is set."""

    if os.environ.get("NO_COLOR"):
        return False
    isatty = getattr(stream, "isatty", None)
    return bool(isatty and isatty())


__all__ = [
    "CONFIG_KEYS",
    "FIELDS",
    "FORMATS",
    "JobConfig",
    "load_config_file",
    "resolve_config",
    "use_color",
]
