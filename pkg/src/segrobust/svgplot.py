"""Severity charts as plain SVG text.

One chart per corruption kind: mean IoU over severity 0..5, one
polyline per mode. Severity 0 has no per-kind rows (clean frames are
scored once, under the "clean" label), so each kind's chart borrows its
level-0 point from those rows. No plotting library, just vector text.
"""

from __future__ import annotations

from pathlib import Path

from .metrics import MODES, GroupReport

__all__ = ["severity_chart", "write_severity_charts"]

_WIDTH, _HEIGHT = 480, 320
_MARGIN_L, _MARGIN_R, _MARGIN_T, _MARGIN_B = 56, 16, 34, 40
_MODE_COLORS = {"single": "#1f77b4", "combined": "#d62728"}


def _row_or_none(report: GroupReport, kind: str, severity: int, mode: str):
    try:
        return report.row(kind, severity, mode)
    except KeyError:
        return None


def _x(severity: float) -> float:
    span = _WIDTH - _MARGIN_L - _MARGIN_R
    return _MARGIN_L + span * severity / 5.0


def _y(iou: float) -> float:
    span = _HEIGHT - _MARGIN_T - _MARGIN_B
    return _MARGIN_T + span * (1.0 - iou)


def severity_chart(report: GroupReport, kind: str, clean_kind: str = "clean") -> str:
    """SVG document text for one kind's severity curves."""
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_WIDTH}" height="{_HEIGHT}" '
        f'viewBox="0 0 {_WIDTH} {_HEIGHT}">',
        f'<rect width="{_WIDTH}" height="{_HEIGHT}" fill="white"/>',
        f'<text x="{_WIDTH / 2:.1f}" y="20" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{kind}</text>',
    ]
    axis = (
        f'<line x1="{_MARGIN_L}" y1="{_y(0.0):.1f}" x2="{_WIDTH - _MARGIN_R}" '
        f'y2="{_y(0.0):.1f}" stroke="black"/>'
        f'<line x1="{_MARGIN_L}" y1="{_y(0.0):.1f}" x2="{_MARGIN_L}" '
        f'y2="{_y(1.0):.1f}" stroke="black"/>'
    )
    parts.append(axis)
    for s in range(6):
        parts.append(
            f'<text x="{_x(s):.1f}" y="{_y(0.0) + 16:.1f}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{s}</text>'
        )
    for tick in (0.0, 0.25, 0.5, 0.75, 1.0):
        parts.append(
            f'<text x="{_MARGIN_L - 6}" y="{_y(tick) + 4:.1f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{tick:g}</text>'
        )
    parts.append(
        f'<text x="{(_MARGIN_L + _WIDTH - _MARGIN_R) / 2:.1f}" y="{_HEIGHT - 8}" '
        f'text-anchor="middle" font-family="sans-serif" font-size="12">severity</text>'
    )

    for mode in MODES:
        points = []
        clean_row = _row_or_none(report, clean_kind, 0, mode)
        if clean_row is not None:
            points.append((0, clean_row.mean_iou))
        for severity in range(6):
            row = _row_or_none(report, kind, severity, mode)
            if row is not None:
                points.append((severity, row.mean_iou))
        points.sort(key=lambda p: p[0])
        if not points:
            continue
        coords = " ".join(f"{_x(s):.1f},{_y(v):.1f}" for s, v in points)
        color = _MODE_COLORS.get(mode, "black")
        parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="2"/>'
        )
        for s, v in points:
            parts.append(f'<circle cx="{_x(s):.1f}" cy="{_y(v):.1f}" r="3" fill="{color}"/>')

    legend_y = _MARGIN_T + 4
    for i, mode in enumerate(MODES):
        color = _MODE_COLORS.get(mode, "black")
        y = legend_y + 16 * i
        parts.append(
            f'<line x1="{_WIDTH - 130}" y1="{y}" x2="{_WIDTH - 106}" y2="{y}" '
            f'stroke="{color}" stroke-width="2"/>'
            f'<text x="{_WIDTH - 100}" y="{y + 4}" font-family="sans-serif" '
            f'font-size="11">{mode}</text>'
        )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_severity_charts(report: GroupReport, out_dir: str | Path, clean_kind: str = "clean") -> list[Path]:
    """One ``<kind>.svg`` per kind in the report (the clean label aside)."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    kinds = sorted({row.kind for row in report.rows if row.kind != clean_kind})
    written = []
    for kind in kinds:
        path = out_dir / f"{kind}.svg"
        path.write_text(severity_chart(report, kind, clean_kind=clean_kind), encoding="utf-8")
        written.append(path)
    return written
