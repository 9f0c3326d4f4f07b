"""Deterministic key-value and JSON reports."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from fractions import Fraction
from typing import Any

from ..core.fields import Fp, scalar_str
from ..core.forms import Form, format_form
from ..core.points import LinearSubspace, ProjectivePoint


def plain(value: Any) -> Any:
    """JSON-compatible rendering of report values."""
    if isinstance(value, bool) or value is None or isinstance(value, (int, str)):
        return value
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (Fraction, Fp)):
        return scalar_str(value)
    if isinstance(value, ProjectivePoint):
        return str(value)
    if isinstance(value, Form):
        return format_form(value)
    if isinstance(value, LinearSubspace):
        return [str(p) for p in value.points]
    if isinstance(value, dict):
        return {str(k): plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [plain(v) for v in value]
    return str(value)


def _text_value(value: Any) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return "none"
    if isinstance(value, list):
        return ", ".join(_text_value(v) for v in value) if value else "none"
    if isinstance(value, dict):
        return json.dumps(value, sort_keys=True)
    return str(value)


def _flatten(prefix: str, value: Any, out: list[tuple[str, str]]) -> None:
    if isinstance(value, dict) and value:
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    else:
        out.append((prefix, _text_value(value)))


@dataclass
class Report:
    command: str
    inputs: dict[str, Any] = field(default_factory=dict)
    results: dict[str, Any] = field(default_factory=dict)
    citations: list[str] = field(default_factory=list)
    assumptions: list[str] = field(default_factory=list)

    def as_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "inputs": plain(self.inputs),
            "results": plain(self.results),
            "citations": list(self.citations),
            "assumptions": list(self.assumptions),
        }

    def render(self, as_json: bool = False, timestamp: bool = False) -> str:
        data = self.as_dict()
        stamp = datetime.now(timezone.utc).isoformat(timespec="seconds") if timestamp else None
        if as_json:
            if stamp:
                data["timestamp"] = stamp
            return json.dumps(data, indent=2) + "\n"
        rows: list[tuple[str, str]] = [("command", self.command)]
        _flatten("", data["results"], rows)
        rows.append(("citations", _text_value(data["citations"])))
        rows.append(("assumptions", _text_value(data["assumptions"])))
        if stamp:
            rows.append(("timestamp", stamp))
        return "".join(f"{k}: {v}\n" for k, v in rows)
