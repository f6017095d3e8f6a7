"""Utility exports."""

from .formatting import (
    dump_json_line,
    format_exponent,
    format_series_text,
    format_table,
    series_from_record,
    series_record,
)
from .monomials import (
    MonomialParseError,
    parse_monomial,
    parse_theta_pair,
    random_monomial,
    random_theta_pair,
)

__all__ = [
    "MonomialParseError",
    "dump_json_line",
    "format_exponent",
    "format_series_text",
    "format_table",
    "parse_monomial",
    "parse_theta_pair",
    "random_monomial",
    "random_theta_pair",
    "series_from_record",
    "series_record",
]
