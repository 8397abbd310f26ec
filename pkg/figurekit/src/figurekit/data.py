"""Reading the ftqec-limits v1 CSV format.

A file starts with the literal comment ``# ftqec-limits csv v1`` followed
by a header row.  Rows carry ``figure, series, p, value, ci_low, ci_high``;
the CI fields are empty for bound curves and frozen reference points.  A
completely empty file is accepted and yields no series, so the caller can
report every required series as missing rather than a format error.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path

CSV_VERSION = "# ftqec-limits csv v1"

_REQUIRED_COLUMNS = ("figure", "series", "p", "value", "ci_low", "ci_high")


class DataFormatError(Exception):
    """The input file is not a readable ftqec-limits v1 CSV."""


@dataclass(frozen=True)
class SeriesPoint:
    """One plotted point: abscissa, value and an optional confidence band."""

    p: float
    value: float
    ci_low: float | None = None
    ci_high: float | None = None


def _parse_optional(text: str, row_num: int, column: str) -> float | None:
    if text == "":
        return None
    try:
        return float(text)
    except ValueError:
        raise DataFormatError(
            f"row {row_num}: column {column!r} is not a number: {text!r}"
        ) from None


def load_series(path: str | Path) -> dict[tuple[str, str], list[SeriesPoint]]:
    """Load a CSV file into points keyed by ``(figure, series)``.

    Points keep file order; rows belonging to other figures are kept too,
    so one file may carry several figures at once.
    """
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DataFormatError(f"cannot read {path}: {exc}") from exc
    if not text.strip():
        return {}

    lines = text.splitlines()
    if lines[0].strip() != CSV_VERSION:
        raise DataFormatError(
            f"first line must be {CSV_VERSION!r}, got {lines[0].strip()!r}"
        )

    reader = csv.DictReader(lines[1:])
    header = reader.fieldnames or []
    missing = [c for c in _REQUIRED_COLUMNS if c not in header]
    if missing:
        raise DataFormatError(f"missing columns: {', '.join(missing)}")

    out: dict[tuple[str, str], list[SeriesPoint]] = {}
    for row_num, row in enumerate(reader, start=3):
        try:
            p = float(row["p"])
            value = float(row["value"])
        except (TypeError, ValueError):
            raise DataFormatError(
                f"row {row_num}: p/value must be numbers, got "
                f"{row['p']!r}/{row['value']!r}"
            ) from None
        point = SeriesPoint(
            p=p,
            value=value,
            ci_low=_parse_optional(row["ci_low"] or "", row_num, "ci_low"),
            ci_high=_parse_optional(row["ci_high"] or "", row_num, "ci_high"),
        )
        out.setdefault((row["figure"], row["series"]), []).append(point)
    return out
