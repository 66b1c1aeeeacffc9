"""Deterministic DOT and SVG renderings, no drawing dependencies.

Both emitters produce byte-stable output for a fixed input: nodes and
edges are sorted, floats are formatted to fixed precision, and nothing
time- or environment-dependent is written.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .metrics import DesignScore
from .model import LineageGraph

SVG_WIDTH = 640
SVG_HEIGHT = 480
MARGIN_LEFT = 60
MARGIN_RIGHT = 20
MARGIN_TOP = 20
MARGIN_BOTTOM = 50

QUADRANT_FILL = {
    "Q1": "#999999",
    "Q2": "#d95f02",
    "Q3": "#1b9e77",
    "Q4": "#7570b3",
}


def _dot_quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(graph: LineageGraph) -> str:
    """DOT digraph with child -> parent edges.

    Nodes are listed sorted by id; stubs render dashed and multi-parent
    designs get a double outline.
    """
    multi = set(graph.multi_parent_designs())
    lines = ["digraph remixes {"]
    for design in graph.designs():
        attrs = []
        if design.is_stub:
            attrs.append("style=dashed")
        if design.id in multi:
            attrs.append("peripheries=2")
        suffix = f" [{', '.join(attrs)}]" if attrs else ""
        lines.append(f"  {_dot_quote(design.id)}{suffix};")
    for child, parent in sorted(graph.edges()):
        lines.append(f"  {_dot_quote(child)} -> {_dot_quote(parent)};")
    lines.append("}")
    return "".join(line + "\n" for line in lines)


def _x_px(value: float) -> float:
    return MARGIN_LEFT + value * (SVG_WIDTH - MARGIN_LEFT - MARGIN_RIGHT)


def _y_px(value: float) -> float:
    return SVG_HEIGHT - MARGIN_BOTTOM - value * (SVG_HEIGHT - MARGIN_TOP - MARGIN_BOTTOM)


def _f(value: float) -> str:
    return f"{value:.2f}"


def scatter_svg(rows: list[DesignScore], thresholds: tuple[float, float]) -> str:
    """Self-contained scatter of (betweenness, independence) per design.

    x is normalized betweenness, y the independence score, both on [0, 1];
    the two threshold lines mark the quadrant boundaries. Rows without a
    defined independence score are not plottable and must be filtered out
    by the caller; at least one plottable row is required.
    """
    defined = [row for row in rows if row.independence is not None]
    if not defined:
        raise ValueError("nothing to plot: no rows with defined scores")
    b_threshold, i_threshold = thresholds

    x0, x1 = _x_px(0.0), _x_px(1.0)
    y0, y1 = _y_px(0.0), _y_px(1.0)
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" '
        f'viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}">',
        f'<rect x="0" y="0" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" fill="#ffffff"/>',
        f'<line class="axis" x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x1)}" y2="{_f(y0)}" '
        'stroke="#000000" stroke-width="1"/>',
        f'<line class="axis" x1="{_f(x0)}" y1="{_f(y0)}" x2="{_f(x0)}" y2="{_f(y1)}" '
        'stroke="#000000" stroke-width="1"/>',
        f'<text x="{_f((x0 + x1) / 2)}" y="{_f(y0 + 35)}" text-anchor="middle" '
        'font-family="sans-serif" font-size="13">normalized betweenness</text>',
        f'<text x="15" y="{_f((y0 + y1) / 2)}" text-anchor="middle" '
        'font-family="sans-serif" font-size="13" '
        f'transform="rotate(-90 15 {_f((y0 + y1) / 2)})">independence score</text>',
        f'<text x="{_f(x0)}" y="{_f(y0 + 16)}" text-anchor="middle" '
        'font-family="sans-serif" font-size="11">0</text>',
        f'<text x="{_f(x1)}" y="{_f(y0 + 16)}" text-anchor="middle" '
        'font-family="sans-serif" font-size="11">1</text>',
        f'<text x="{_f(x0 - 10)}" y="{_f(y1 + 4)}" text-anchor="end" '
        'font-family="sans-serif" font-size="11">1</text>',
    ]
    bx = _x_px(max(0.0, min(1.0, b_threshold)))
    iy = _y_px(max(0.0, min(1.0, i_threshold)))
    parts.append(
        f'<line class="threshold" x1="{_f(bx)}" y1="{_f(y0)}" x2="{_f(bx)}" y2="{_f(y1)}" '
        'stroke="#cc0000" stroke-width="1" stroke-dasharray="4 3"/>'
    )
    parts.append(
        f'<line class="threshold" x1="{_f(x0)}" y1="{_f(iy)}" x2="{_f(x1)}" y2="{_f(iy)}" '
        'stroke="#cc0000" stroke-width="1" stroke-dasharray="4 3"/>'
    )
    for row in defined:
        high_b = row.betweenness > b_threshold
        high_i = row.independence > i_threshold
        quadrant = ("Q3" if high_i else "Q1") if not high_b else ("Q4" if high_i else "Q2")
        cx = _x_px(max(0.0, min(1.0, row.betweenness)))
        cy = _y_px(max(0.0, min(1.0, row.independence)))
        parts.append(
            f'<circle class="marker" cx="{_f(cx)}" cy="{_f(cy)}" r="3.5" '
            f'fill="{QUADRANT_FILL[quadrant]}" fill-opacity="0.8">'
            f"<title>{escape(row.id)}</title></circle>"
        )
    parts.append("</svg>")
    return "".join(part + "\n" for part in parts)
