"""Rendering helpers for series and claim reports."""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from ..engine.series import LatticeSeries


def format_exponent(index: int, scale: int) -> str:
    """Lattice index as a reduced fraction ``"k/D"`` or an integer."""
    value = Fraction(index, scale)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def series_record(series: LatticeSeries) -> dict[str, Any]:
    """Serializable ``{scale, min_exp, trunc, coeffs}`` with decimal-string coefficients."""
    return {
        "scale": series.scale,
        "min_exp": series.min_exp,
        "trunc": series.trunc,
        "coeffs": [str(value) for value in series.coeffs],
    }


def series_from_record(record: Mapping[str, Any]) -> LatticeSeries:
    coeffs = tuple(int(value) for value in record["coeffs"])
    return LatticeSeries(
        scale=int(record["scale"]),
        min_exp=int(record["min_exp"]),
        trunc=int(record["trunc"]),
        coeffs=coeffs,
    )


def dump_json_line(payload: Mapping[str, Any]) -> str:
    """Canonical one-line JSON used by reports and golden files."""
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


def format_series_text(series: LatticeSeries) -> str:
    """Human-readable listing: a header line and one ``exponent: coefficient`` line per term."""
    header = f"scale={series.scale} min_exp={series.min_exp} trunc={series.trunc}"
    if series.is_zero:
        return f"{header}\n0 + O(q^{format_exponent(series.trunc + 1, series.scale)})"
    lines = [header]
    for offset, value in enumerate(series.coeffs):
        lines.append(f"q^{format_exponent(series.min_exp + offset, series.scale)}: {value}")
    return "\n".join(lines)


def format_table(headers: Sequence[str], rows: Iterable[Sequence[str]]) -> str:
    """Left-aligned plain text table."""
    body = [list(map(str, row)) for row in rows]
    widths = [len(header) for header in headers]
    for row in body:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(header.ljust(widths[i]) for i, header in enumerate(headers)).rstrip()]
    lines.append("  ".join("-" * width for width in widths))
    for row in body:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)).rstrip())
    return "\n".join(lines)


__all__ = [
    "dump_json_line",
    "format_exponent",
    "format_series_text",
    "format_table",
    "series_from_record",
    "series_record",
]
