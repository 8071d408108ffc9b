"""Deterministic rendering of verdicts as json or text reports.

The json form is byte-stable: insertion-ordered keys, exact rationals
as strings, no timestamps.  A report is replayable by construction,
since every number it contains was recomputed by the verifier that
produced it.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

from .division import Certificate
from .lattices import Lattice, ValueVector
from .symbols import SymbolSum, SymbolTerm
from .towers import FieldTower, FormalElement
from .verify import Verdict

SCHEMA = "brauerval.report/1"
ENGINE_VERSION = "0.1.0"


@dataclass(frozen=True, slots=True)
class Report:
    verdict: Verdict
    timing: float | None = None


def _is_payload(value: object) -> bool:
    return (
        isinstance(value, tuple)
        and len(value) > 0
        and all(
            isinstance(item, tuple) and len(item) == 2 and isinstance(item[0], str)
            for item in value
        )
    )


def encode(value: object) -> Any:
    """Json-compatible form with deterministic ordering."""
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, ValueVector):
        return [encode(c) for c in value.coords]
    if isinstance(value, Lattice):
        return {"denominator": value.denominator, "rows": [list(r) for r in value.rows]}
    if isinstance(value, (FormalElement, SymbolTerm, SymbolSum)):
        return str(value)
    if isinstance(value, Certificate):
        return {
            "rule": value.rule,
            "status": value.status,
            "payload": encode(value.payload) if value.payload else {},
            "children": [encode(c) for c in value.children],
        }
    if isinstance(value, FieldTower):
        return {
            "characteristic": value.char,
            "constants": sorted(value.ground.constants),
            "variables": list(value.variables),
            "generators": [f"{g.name} = {g.kind}({g.rhs})" for g in value.generators],
        }
    if _is_payload(value):
        return {k: encode(v) for k, v in value}
    if isinstance(value, (tuple, list, frozenset, set)):
        items = sorted(value, key=str) if isinstance(value, (set, frozenset)) else value
        return [encode(v) for v in items]
    raise TypeError(f"cannot encode {type(value).__name__} into a report")


def report_dict(report: Report) -> dict[str, Any]:
    v = report.verdict
    return {
        "schema": SCHEMA,
        "engine_version": ENGINE_VERSION,
        "task": v.task,
        "parameters": encode(v.parameters) if v.parameters else {},
        "result": v.result,
        "exit_code": v.exit_code,
        "payload": encode(v.payload) if v.payload else {},
        "certificates": [encode(c) for c in v.certificates],
        "timing": None,
    }


def render_json(report: Report) -> str:
    return json.dumps(report_dict(report), indent=2) + "\n"


def _text_payload_lines(payload: tuple, indent: str) -> list[str]:
    lines = []
    for key, value in payload:
        if _is_payload(value):
            lines.append(f"{indent}{key}:")
            lines.extend(_text_payload_lines(value, indent + "  "))
        else:
            lines.append(f"{indent}{key}: {_text_value(value)}")
    return lines


def _text_value(value: object) -> str:
    if isinstance(value, (tuple, list)):
        return "[" + ", ".join(_text_value(v) for v in value) + "]"
    if isinstance(value, Lattice):
        return str(value)
    return str(value)


def _certificate_lines(cert: Certificate, indent: str) -> list[str]:
    head = f"{indent}{cert.rule}: {cert.status}"
    summary = ", ".join(
        f"{k}={_text_value(v)}"
        for k, v in cert.payload
        if isinstance(v, (str, int, bool, Fraction, ValueVector)) or v is None
    )
    if summary:
        head += f"  [{summary}]"
    lines = [head]
    for child in cert.children:
        lines.extend(_certificate_lines(child, indent + "  "))
    return lines


def render_text(report: Report) -> str:
    v = report.verdict
    lines = [f"task: {v.task}"]
    if v.parameters:
        lines.append(
            "parameters: " + " ".join(f"{k}={_text_value(x)}" for k, x in v.parameters)
        )
    lines.append(f"result: {v.result}")
    if v.payload:
        lines.append("payload:")
        lines.extend(_text_payload_lines(v.payload, "  "))
    if v.certificates:
        lines.append("steps:")
        for cert in v.certificates:
            lines.extend(_certificate_lines(cert, "  "))
    if report.timing is not None:
        lines.append(f"timing: {report.timing:.3f}s")
    return "\n".join(lines) + "\n"


def emit_report(report: Report, format: str = "json", out: str | None = None) -> str:
    """Render and optionally write the report; returns the rendered text."""
    if format == "json":
        rendered = render_json(report)
    elif format == "text":
        rendered = render_text(report)
    else:
        raise ValueError(f"unknown report format {format!r}")
    if out is not None:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(rendered)
    return rendered
