# charts.py
"""
Static SVG strip charts of pattern verdicts.

One column per degree t, coloured by verdict, with tick labels every
|v_1| degrees. Output is a plain string and depends only on the reports,
so identical queries give byte-identical files.
"""

from html import escape
from pathlib import Path
from typing import Sequence

from duality import PatternReport, Verdict
from errors import DomainError

FONT = "'Segoe UI', Arial, sans-serif"

COLORS = {
    Verdict.NONZERO: "#2563EB",
    Verdict.INCONCLUSIVE: "#EAB308",
    Verdict.ZERO: "#E2E8F0",
}

CELL   = 6      # px per degree column
STRIP  = 40     # strip height
MARGIN = 24
HEADER = 44


def _svg_open(width: int, height: int) -> str:
    return (f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
            f'viewBox="0 0 {width} {height}" font-family="{FONT}">\n')


def _title(text: str, x: int, y: int, *, size: int = 14) -> str:
    return (f'  <text x="{x}" y="{y}" font-size="{size}" font-weight="700" '
            f'fill="#1E293B">{escape(text)}</text>\n')


def _cell(x: int, y: int, color: str, t: int) -> str:
    return (f'  <rect x="{x}" y="{y}" width="{CELL}" height="{STRIP}" fill="{color}">'
            f'<title>t = {t}</title></rect>\n')


def _tick(x: int, y: int, t: int) -> str:
    return (f'  <line x1="{x}" y1="{y}" x2="{x}" y2="{y + 4}" stroke="#64748B" stroke-width="1"/>\n'
            f'  <text x="{x}" y="{y + 16}" text-anchor="middle" font-size="9" '
            f'fill="#64748B">{t}</text>\n')


def strip_chart(reports: Sequence[PatternReport], title: str) -> str:
    """SVG document for reports over consecutive degrees (any order)."""
    if not reports:
        raise DomainError("no reports to draw")
    ordered = sorted(reports, key=lambda r: r.query.t)
    lo = ordered[0].query.t
    step = 2 * (ordered[0].query.ctx.p - 1)
    while step * CELL < 48:     # keep tick labels apart
        step *= 2

    width = 2 * MARGIN + CELL * (ordered[-1].query.t - lo + 1)
    height = HEADER + STRIP + 40
    parts = [_svg_open(width, height),
             f'  <rect width="{width}" height="{height}" rx="8" fill="#F8FAFC"/>\n',
             _title(title, MARGIN, 26)]
    for report in ordered:
        x = MARGIN + CELL * (report.query.t - lo)
        parts.append(_cell(x, HEADER, COLORS[report.verdict], report.query.t))
    for report in ordered:
        t = report.query.t
        if t % step == 0:
            parts.append(_tick(MARGIN + CELL * (t - lo) + CELL // 2, HEADER + STRIP, t))
    parts.append("</svg>\n")
    return "".join(parts)


def write_strip_chart(path: str, reports: Sequence[PatternReport], title: str) -> Path:
    target = Path(path)
    target.write_text(strip_chart(reports, title), encoding="utf-8", newline="\n")
    return target
