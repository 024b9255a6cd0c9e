"""
Number and table rendering for the command-line output.

Text output uses a fixed number of significant digits with trailing zeros
trimmed; CSV and JSON use the shortest round-trip representation.
"""
import csv
import io
from typing import Any, Optional, Sequence

import config

# Values this small print as exact zeros (zero modes, vanishing slopes).
ZERO_THRESHOLD = 1e-12


def format_number(value: Optional[float], digits: Optional[int] = None) -> str:
    """
    >>> format_number(43.28206990)
    '43.2820699'
    >>> format_number(-3e-15)
    '0'
    """
    if value is None:
        return ""
    if abs(value) < ZERO_THRESHOLD:
        return "0"
    return f"{value:.{digits or config.TEXT_DIGITS}g}"


def repr_number(value: Optional[float]) -> str:
    return "" if value is None else repr(float(value))


def format_table(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    """Left-aligned columns separated by two spaces, one line per row."""
    cells = [[str(h) for h in headers]] + [[str(c) for c in row] for row in rows]
    widths = [max(len(row[i]) for row in cells) for i in range(len(headers))]
    lines = ["  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def csv_text(headers: Sequence[str], rows: Sequence[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(headers)
    for row in rows:
        writer.writerow(row)
    return buffer.getvalue()
