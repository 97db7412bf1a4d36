"""
Report
======
Serialises election rows as CSV/JSON tables and renders the per-party line
charts and the correlation heatmap as SVG.

Every emitter returns bytes and is deterministic: the same input always
produces byte-identical output, so reports can be diffed between runs.
"""

from __future__ import annotations

import csv
import io
import json
import logging
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union
from xml.sax.saxutils import escape

from .affect import AFFECT_CATEGORIES, AFFECT_GROUPS, group_frequency, top_categories
from .analytics import (
    SHARE_VARIABLES,
    AnalyticsError,
    CorrelationMatrix,
    ElectionRow,
    PartySeries,
    StatusContrast,
    build_series,
    category_leaders,
    correlation_matrix,
    status_contrast,
)

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

TABLE_FORMATS: Tuple[str, ...] = ("csv", "json")
SUMMARY_HEADER: Tuple[str, ...] = (
    "party",
    "year",
    "sentences",
    "gov_status",
    "pos_share",
    "pos_change",
    "neg_share",
    "neg_change",
    "neut_share",
)
CHART_GROUPS: Tuple[str, ...] = ("shares", "sentiment", "tja", "fasd", "all")

# fixed so charts from different runs stay comparable
PALETTE: Dict[str, str] = {
    "pos_share": "#1a9850",
    "neg_share": "#d73027",
    "neut_share": "#878787",
    "positive": "#1b9e77",
    "negative": "#d95f02",
    "joy": "#e6ab02",
    "trust": "#1f78b4",
    "anticipation": "#66a61e",
    "surprise": "#e7298a",
    "fear": "#7570b3",
    "sadness": "#a6761d",
    "anger": "#e31a1c",
    "disgust": "#666666",
}

_SERIES_LABELS: Dict[str, str] = {
    "pos_share": "Positive sentences (%)",
    "neg_share": "Negative sentences (%)",
    "neut_share": "Neutral sentences (%)",
}
_GROUP_MEMBERS: Dict[str, Tuple[str, ...]] = {"shares": SHARE_VARIABLES, **AFFECT_GROUPS}

_NEGATIVE_COLOR = (0x3B, 0x4C, 0xC0)
_NEUTRAL_COLOR = (0xF7, 0xF7, 0xF7)
_POSITIVE_COLOR = (0xB4, 0x04, 0x26)


class ReportError(ValueError):
    """Raised for unrenderable input: empty rows, unknown formats, invalid charts."""


def _fixed(value: float, places: int) -> str:
    text = f"{value:.{places}f}"
    # "-0.00" and "0.00" are the same number in a table
    if text.startswith("-") and float(text) == 0.0:
        text = text[1:]
    return text


def _ordered(rows: Sequence[ElectionRow]) -> List[ElectionRow]:
    """Parties in first-seen order, years ascending within a party."""
    parties = list(dict.fromkeys(r.party for r in rows))
    return sorted(rows, key=lambda r: (parties.index(r.party), r.year))


# ----------------------------------------------------------------------
# Tables
# ----------------------------------------------------------------------


def _summary_record(row: ElectionRow) -> Dict[str, str]:
    return {
        "party": row.party,
        "year": str(row.year),
        "sentences": str(row.sentences),
        "gov_status": row.gov_status.value,
        "pos_share": _fixed(row.pos_share, 3),
        "pos_change": _fixed(row.pos_change, 2),
        "neg_share": _fixed(row.neg_share, 3),
        "neg_change": _fixed(row.neg_change, 2),
        "neut_share": _fixed(row.neut_share, 3),
    }


def _csv_bytes(header: Sequence[str], records: Sequence[Sequence[str]]) -> bytes:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(records)
    return buffer.getvalue().encode("utf-8")


def emit_table(rows: Sequence[ElectionRow], fmt: str = "csv") -> bytes:
    """
    Serialise the sentiment summary table.

    Parameters
    ----------
    rows:
        Election rows; reordered by party (first-seen) and year.
    fmt:
        ``"csv"`` or ``"json"``. JSON carries the same fields, numbers
        rounded to the printed precision.

    Raises
    ------
    ReportError
        If ``rows`` is empty or ``fmt`` is not a known table format.
    """
    if not rows:
        raise ReportError("no rows to emit")
    if fmt not in TABLE_FORMATS:
        raise ReportError(f"unknown table format '{fmt}' (expected one of {', '.join(TABLE_FORMATS)})")

    records = [_summary_record(r) for r in _ordered(rows)]
    if fmt == "csv":
        return _csv_bytes(SUMMARY_HEADER, [[rec[k] for k in SUMMARY_HEADER] for rec in records])

    payload = [
        {
            "party": rec["party"],
            "year": int(rec["year"]),
            "sentences": int(rec["sentences"]),
            "gov_status": rec["gov_status"],
            **{k: float(rec[k]) for k in SUMMARY_HEADER[4:]},
        }
        for rec in records
    ]
    return (json.dumps(payload, indent=2) + "\n").encode("utf-8")


AFFECT_HEADER: Tuple[str, ...] = (
    ("party", "year", "gov_status", "total_hits") + AFFECT_CATEGORIES + ("tja", "fasd", "top_category")
)


def emit_affect_table(rows: Sequence[ElectionRow]) -> bytes:
    """
    Per-document affect frequencies at 4 decimals, with the raw hit count,
    the summed TJA and FASD group frequencies and the most frequent category
    (empty for a document without hits).
    """
    if not rows:
        raise ReportError("no rows to emit")
    records = []
    for r in _ordered(rows):
        top = top_categories(r.affect, 1)[0][0] if r.affect.total_hits else ""
        records.append(
            [r.party, str(r.year), r.gov_status.value, str(r.affect.total_hits)]
            + [_fixed(r.affect[c], 4) for c in AFFECT_CATEGORIES]
            + [_fixed(group_frequency(r.affect, g), 4) for g in ("tja", "fasd")]
            + [top]
        )
    return _csv_bytes(AFFECT_HEADER, records)


def emit_leaders_table(rows: Sequence[ElectionRow]) -> bytes:
    """
    Which party leads each affect category in each election year.

    One row per year; a cell holds the leading party, or ``tie`` when the
    top value is shared.
    """
    if not rows:
        raise ReportError("no rows to emit")
    leaders = {c: category_leaders(rows, c) for c in AFFECT_CATEGORIES}
    years = sorted({r.year for r in rows})
    records = [
        [str(year)] + [leaders[c][year] or "tie" for c in AFFECT_CATEGORIES]
        for year in years
    ]
    return _csv_bytes(("year",) + AFFECT_CATEGORIES, records)


_CONTRAST_HEADER = ("variable", "incumbent_mean", "opposition_mean", "difference")
_CONTRAST_VARIABLES = SHARE_VARIABLES + AFFECT_CATEGORIES


def emit_status_contrast(contrast: Optional[Sequence[StatusContrast]]) -> bytes:
    """
    Incumbent versus opposition means at 4 decimals.

    ``None`` stands for a corpus where the contrast is undefined (one status
    only); every variable is then written with ``n/a`` cells.
    """
    if contrast is None:
        return _csv_bytes(_CONTRAST_HEADER, [[v, "n/a", "n/a", "n/a"] for v in _CONTRAST_VARIABLES])
    if not contrast:
        raise ReportError("no status contrast to emit")
    records = [
        [c.variable, _fixed(c.incumbent_mean, 4), _fixed(c.opposition_mean, 4), _fixed(c.difference, 4)]
        for c in contrast
    ]
    return _csv_bytes(_CONTRAST_HEADER, records)


# ----------------------------------------------------------------------
# Chart specs
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ChartSeries:
    name: str
    group: str
    points: Tuple[float, ...]


@dataclass(frozen=True)
class ChartSpec:
    title: str
    years: Tuple[int, ...]
    series: Tuple[ChartSeries, ...]
    y_label: str = "Affect frequency"
    palette: Mapping[str, str] = field(default_factory=lambda: dict(PALETTE))

    def validate(self) -> None:
        if not self.series:
            raise ReportError(f"chart '{self.title}' has no series")
        if not self.years:
            raise ReportError(f"chart '{self.title}' has no election years")
        for s in self.series:
            if len(s.points) != len(self.years):
                raise ReportError(
                    f"series '{s.name}' has {len(s.points)} points for {len(self.years)} years"
                )
            members = _GROUP_MEMBERS.get(s.group)
            if members is None:
                raise ReportError(f"unknown chart group '{s.group}'")
            if s.name not in members:
                raise ReportError(f"series '{s.name}' does not belong to group '{s.group}'")
            if s.name not in self.palette:
                raise ReportError(f"no palette colour for series '{s.name}'")


def party_charts(series: PartySeries) -> Dict[str, ChartSpec]:
    """
    The per-party charts keyed by group.

    ``shares`` plots the positive/negative/neutral sentence shares;
    ``sentiment`` the positive and negative affect frequencies; ``tja``,
    ``fasd`` and ``all`` the corresponding affect categories.
    """
    years = series.years
    party = series.party
    charts: Dict[str, ChartSpec] = {
        "shares": ChartSpec(
            title=f"{party}: sentence sentiment shares",
            years=years,
            series=tuple(
                ChartSeries(name=v, group="shares", points=series.shares[v])
                for v in SHARE_VARIABLES
            ),
            y_label="Share of sentences (%)",
        )
    }
    titles = {
        "sentiment": "positive and negative affect",
        "tja": "trust, joy and anticipation",
        "fasd": "fear, anger, sadness and disgust",
        "all": "all affect categories",
    }
    for group in ("sentiment", "tja", "fasd", "all"):
        charts[group] = ChartSpec(
            title=f"{party}: {titles[group]}",
            years=years,
            series=tuple(
                ChartSeries(name=c, group=group, points=points)
                for c, points in series.group(group).items()
            ),
        )
    return charts


# ----------------------------------------------------------------------
# SVG
# ----------------------------------------------------------------------


class _SvgCanvas:
    """Append-only SVG document with fixed numeric formatting."""

    def __init__(self, width: int, height: int) -> None:
        self.width = width
        self.height = height
        self._parts: List[str] = [
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{width}" height="{height}" viewBox="0 0 {width} {height}">\n',
            f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>\n',
        ]

    def line(self, x1: float, y1: float, x2: float, y2: float, stroke: str, width: float = 1.0) -> None:
        self._parts.append(
            f'<line x1="{x1:.2f}" y1="{y1:.2f}" x2="{x2:.2f}" y2="{y2:.2f}" '
            f'stroke="{stroke}" stroke-width="{width:.1f}"/>\n'
        )

    def polyline(self, points: Sequence[Tuple[float, float]], stroke: str) -> None:
        coords = " ".join(f"{x:.2f},{y:.2f}" for x, y in points)
        self._parts.append(
            f'<polyline points="{coords}" fill="none" stroke="{stroke}" stroke-width="2.0"/>\n'
        )

    def circle(self, cx: float, cy: float, r: float, fill: str) -> None:
        self._parts.append(f'<circle cx="{cx:.2f}" cy="{cy:.2f}" r="{r:.1f}" fill="{fill}"/>\n')

    def rect(self, x: float, y: float, w: float, h: float, fill: str, stroke: Optional[str] = None) -> None:
        outline = f' stroke="{stroke}"' if stroke else ""
        self._parts.append(
            f'<rect x="{x:.2f}" y="{y:.2f}" width="{w:.2f}" height="{h:.2f}" fill="{fill}"{outline}/>\n'
        )

    def text(
        self,
        x: float,
        y: float,
        content: str,
        size: int = 12,
        anchor: str = "start",
        fill: str = "#000000",
        rotate: Optional[float] = None,
    ) -> None:
        transform = f' transform="rotate({rotate:.0f} {x:.2f} {y:.2f})"' if rotate is not None else ""
        self._parts.append(
            f'<text x="{x:.2f}" y="{y:.2f}" font-family="sans-serif" font-size="{size}" '
            f'text-anchor="{anchor}" fill="{fill}"{transform}>{escape(content)}</text>\n'
        )

    def to_bytes(self) -> bytes:
        return ("".join(self._parts) + "</svg>\n").encode("utf-8")


_CHART_WIDTH = 720
_CHART_HEIGHT = 420
_MARGIN_LEFT = 70
_MARGIN_RIGHT = 190
_MARGIN_TOP = 50
_MARGIN_BOTTOM = 60
_Y_TICKS = 5


def render_line_chart(spec: ChartSpec) -> bytes:
    """
    One polyline per series over the election years.

    The y-axis runs from 0 to 1.1 times the largest plotted value (1.0 when
    every value is zero); the legend sits to the right of the plot area.
    """
    spec.validate()
    peak = max(max(s.points) for s in spec.series)
    y_max = peak * 1.1 if peak > 0 else 1.0

    left, top = _MARGIN_LEFT, _MARGIN_TOP
    right = _CHART_WIDTH - _MARGIN_RIGHT
    bottom = _CHART_HEIGHT - _MARGIN_BOTTOM
    first, last = spec.years[0], spec.years[-1]

    def x_at(year: int) -> float:
        if last == first:
            return (left + right) / 2
        return left + (year - first) / (last - first) * (right - left)

    def y_at(value: float) -> float:
        return bottom - max(value, 0.0) / y_max * (bottom - top)

    svg = _SvgCanvas(_CHART_WIDTH, _CHART_HEIGHT)
    svg.text(_CHART_WIDTH / 2, 28, spec.title, size=16, anchor="middle")

    tick_places = 1 if y_max >= 10 else 3
    for i in range(_Y_TICKS + 1):
        value = y_max * i / _Y_TICKS
        y = y_at(value)
        svg.line(left, y, right, y, stroke="#e0e0e0")
        svg.text(left - 8, y + 4, _fixed(value, tick_places), size=11, anchor="end")
    svg.line(left, bottom, right, bottom, stroke="#333333")
    svg.line(left, top, left, bottom, stroke="#333333")
    for year in spec.years:
        x = x_at(year)
        svg.line(x, bottom, x, bottom + 5, stroke="#333333")
        svg.text(x, bottom + 20, str(year), size=11, anchor="middle")
    svg.text((left + right) / 2, _CHART_HEIGHT - 15, "Election year", size=12, anchor="middle")
    svg.text(18, (top + bottom) / 2, spec.y_label, size=12, anchor="middle", rotate=-90)

    for s in spec.series:
        colour = spec.palette[s.name]
        points = [(x_at(year), y_at(v)) for year, v in zip(spec.years, s.points)]
        svg.polyline(points, stroke=colour)
        for x, y in points:
            svg.circle(x, y, 3.0, fill=colour)

    legend_x = right + 20
    for i, s in enumerate(spec.series):
        y = top + 10 + i * 20
        svg.rect(legend_x, y - 8, 12, 12, fill=spec.palette[s.name])
        svg.text(legend_x + 18, y + 2, _SERIES_LABELS.get(s.name, s.name), size=12)
    return svg.to_bytes()


def _blend(a: Tuple[int, int, int], b: Tuple[int, int, int], t: float) -> str:
    r, g, bl = (round(x + (y - x) * t) for x, y in zip(a, b))
    return f"#{r:02x}{g:02x}{bl:02x}"


def heatmap_colour(r: float) -> str:
    """Diverging scale: blue at -1, near-white at 0, red at +1."""
    r = max(-1.0, min(1.0, r))
    if r < 0:
        return _blend(_NEUTRAL_COLOR, _NEGATIVE_COLOR, -r)
    return _blend(_NEUTRAL_COLOR, _POSITIVE_COLOR, r)


_CELL = 52
_HEATMAP_LABEL_SPACE = 120


def render_heatmap(matrix: CorrelationMatrix) -> bytes:
    n = len(matrix.variables)
    if n == 0:
        raise ReportError("empty correlation matrix")
    origin = _HEATMAP_LABEL_SPACE
    size = origin + n * _CELL + 20
    svg = _SvgCanvas(size, size + 30)
    svg.text(size / 2, 24, "Correlation matrix", size=16, anchor="middle")

    for i, name in enumerate(matrix.variables):
        centre = origin + i * _CELL + _CELL / 2
        svg.text(origin - 8, centre + 4, name, size=11, anchor="end")
        svg.text(centre, origin - 8, name, size=11, anchor="start", rotate=-45)

    for i in range(n):
        for j in range(n):
            value = matrix.cells[i][j]
            x = origin + j * _CELL
            y = origin + i * _CELL
            svg.rect(x, y, _CELL, _CELL, fill=heatmap_colour(value), stroke="#ffffff")
            ink = "#ffffff" if abs(value) > 0.6 else "#000000"
            svg.text(x + _CELL / 2, y + _CELL / 2 + 4, _fixed(value, 2), size=11, anchor="middle", fill=ink)
    return svg.to_bytes()


def render_unavailable(title: str, reason: str) -> bytes:
    """Stand-in chart for a figure the corpus cannot support, stating why."""
    svg = _SvgCanvas(_CHART_WIDTH, 120)
    svg.text(_CHART_WIDTH / 2, 40, title, size=16, anchor="middle")
    svg.text(_CHART_WIDTH / 2, 80, f"n/a: {reason}", size=12, anchor="middle", fill="#555555")
    return svg.to_bytes()


# ----------------------------------------------------------------------
# Output tree
# ----------------------------------------------------------------------


def _slug(party: str) -> str:
    return re.sub(r"[^a-z0-9]+", "_", party.lower()).strip("_") or "party"


def write_report(
    rows: Sequence[ElectionRow],
    out_dir: PathLike,
    formats: Sequence[str] = TABLE_FORMATS,
    include_shares: bool = False,
) -> List[Path]:
    """
    Write the full output tree under ``out_dir`` and return the written paths.

    Layout::

        tables/summary.csv, tables/summary.json
        tables/affect.csv, tables/leaders.csv, tables/status_contrast.csv
        charts/<party>_{shares,sentiment,tja,fasd,all}.svg
        charts/correlation_heatmap.svg

    The status contrast and the heatmap need both incumbent and opposition
    manifestos, and the heatmap needs every variable to vary. When the rows
    cannot support them they are written as ``n/a`` with a WARNING; the
    rest of the tree is unaffected.
    """
    if not rows:
        raise ReportError("no rows to report")
    unknown = [f for f in formats if f not in TABLE_FORMATS]
    if unknown or not formats:
        raise ReportError(f"unknown table formats {unknown or list(formats)}")

    out = Path(out_dir)
    tables = out / "tables"
    charts = out / "charts"
    tables.mkdir(parents=True, exist_ok=True)
    charts.mkdir(parents=True, exist_ok=True)

    outputs: List[Tuple[Path, bytes]] = []
    for fmt in TABLE_FORMATS:
        if fmt in formats:
            outputs.append((tables / f"summary.{fmt}", emit_table(rows, fmt)))
    outputs.append((tables / "affect.csv", emit_affect_table(rows)))
    outputs.append((tables / "leaders.csv", emit_leaders_table(rows)))
    try:
        contrast: Optional[List[StatusContrast]] = status_contrast(rows)
    except AnalyticsError as exc:
        logger.warning("Status contrast written as n/a: %s", exc)
        contrast = None
    outputs.append((tables / "status_contrast.csv", emit_status_contrast(contrast)))

    for party, series in build_series(rows).items():
        for group, spec in party_charts(series).items():
            outputs.append((charts / f"{_slug(party)}_{group}.svg", render_line_chart(spec)))
    try:
        heatmap = render_heatmap(correlation_matrix(rows, include_shares))
    except AnalyticsError as exc:
        logger.warning("Correlation heatmap written as n/a: %s", exc)
        heatmap = render_unavailable("Correlation matrix", str(exc))
    outputs.append((charts / "correlation_heatmap.svg", heatmap))

    written: List[Path] = []
    for path, payload in outputs:
        path.write_bytes(payload)
        written.append(path)
    logger.info("Wrote %d report files under %s", len(written), out)
    return written
