"""Point-set CSV files.

One point per row: ``n`` followed by ``2n`` rationals written as ``p/q`` (or
integers), the first block before the second. Blank lines and lines starting
with ``#`` are ignored.
"""
from __future__ import annotations

import csv
import io
from fractions import Fraction
from pathlib import Path
from typing import Iterable

from .symplectic import PhasePoint

__all__ = ["read_points", "write_points", "parse_points", "format_points", "PointFileError"]


class PointFileError(ValueError):
    pass


def parse_points(text: str) -> list[PhasePoint]:
    points = []
    for lineno, row in enumerate(csv.reader(io.StringIO(text)), start=1):
        row = [c.strip() for c in row]
        if not row or not any(row) or row[0].startswith("#"):
            continue
        try:
            n = int(row[0])
            coords = [Fraction(c) for c in row[1:]]
        except (ValueError, ZeroDivisionError) as exc:
            raise PointFileError(f"line {lineno}: {exc}") from None
        if n < 1 or len(coords) != 2 * n:
            raise PointFileError(f"line {lineno}: expected n >= 1 and 2n = {2 * n} coordinates, got {len(coords)}")
        points.append(PhasePoint(tuple(coords[:n]), tuple(coords[n:])))
    if points and len({p.n for p in points}) > 1:
        raise PointFileError("points of different dimensions in one file")
    return points


def read_points(path: str | Path) -> list[PhasePoint]:
    return parse_points(Path(path).read_text())


def format_points(points: Iterable[PhasePoint]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for p in points:
        w.writerow([p.n] + [str(v) for v in p.first + p.second])
    return buf.getvalue()


def write_points(path: str | Path, points: Iterable[PhasePoint]) -> None:
    Path(path).write_text(format_points(points))
