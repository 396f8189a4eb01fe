"""Deterministic SVG output for frameworks, colorings and flex frame sequences."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .framework import Framework, FlexLike, sample_times
from .graph import ekey
from .nac import RED, EdgeColoring
from .ribbons import compute_ribbons, square_diagonals

RIBBON_PALETTE = ("#1b9e77", "#d95f02", "#7570b3", "#e7298a", "#66a61e", "#e6ab02", "#a6761d", "#666666")


@dataclass(frozen=True)
class RenderStyle:
    red: str = "#d62728"
    blue: str = "#1f77b4"
    uncolored: str = "#222222"
    brace: str = "#777777"
    brace_dash: str = "4 3"
    ribbon_overlay: bool = False
    fill_braced: str | None = "#d9d9d9"
    frames: int = 1
    scale: float = 40.0
    stroke: float = 2.0
    vertex_radius: float = 2.5
    margin: float = 10.0

    def __post_init__(self):
        if self.frames < 1:
            raise ValueError("frame count must be at least 1")
        if self.scale <= 0:
            raise ValueError("scale must be positive")


def _fmt(x: float) -> str:
    s = f"{x:.6f}"
    return "0.000000" if s == "-0.000000" else s


def _to_canvas(p, style: RenderStyle) -> tuple[float, float]:
    return (p[0] * style.scale, -p[1] * style.scale)


def _viewbox(frames: Iterable[Framework], style: RenderStyle) -> tuple[float, float, float, float]:
    xs, ys = [], []
    for f in frames:
        for p in f.placement.values():
            x, y = _to_canvas(p, style)
            xs.append(x)
            ys.append(y)
    if not xs:
        return (0.0, 0.0, 2 * style.margin, 2 * style.margin)
    m = style.margin
    return (min(xs) - m, min(ys) - m, max(xs) - min(xs) + 2 * m, max(ys) - min(ys) + 2 * m)


def _edge_color(e, coloring: EdgeColoring | None, ribbon_of: dict | None, style: RenderStyle) -> str:
    if coloring is not None and e in coloring.edges:
        return style.red if coloring.color(e) == RED else style.blue
    if ribbon_of is not None and e in ribbon_of:
        return RIBBON_PALETTE[ribbon_of[e] % len(RIBBON_PALETTE)]
    return style.uncolored


def render_svg(
    f: Framework,
    coloring: EdgeColoring | None = None,
    style: RenderStyle = RenderStyle(),
    viewbox: tuple | None = None,
) -> str:
    """One SVG 1.1 document; braced rhombi filled, braces dashed."""
    vb = viewbox or _viewbox([f], style)
    base = f.unbraced
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{" ".join(_fmt(v) for v in vb)}" width="{_fmt(vb[2])}" height="{_fmt(vb[3])}">',
    ]
    if f.braces and style.fill_braced:
        diags = square_diagonals(base)
        for br in sorted(f.braces, key=ekey):
            for cyc in diags.get(br, ()):
                pts = " ".join(",".join(_fmt(c) for c in _to_canvas(f.point(v), style)) for v in cyc)
                out.append(f'<polygon class="braced" points="{pts}" fill="{style.fill_braced}" stroke="none"/>')
    ribbon_of = compute_ribbons(base).ribbon_of if style.ribbon_overlay else None
    for e in sorted(base.edges, key=ekey):
        (x1, y1), (x2, y2) = (_to_canvas(f.point(v), style) for v in e)
        col = _edge_color(e, coloring, ribbon_of, style)
        out.append(
            f'<line class="edge" data-u="{e[0]}" data-v="{e[1]}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="{col}" stroke-width="{_fmt(style.stroke)}"/>'
        )
    for e in sorted(f.braces, key=ekey):
        (x1, y1), (x2, y2) = (_to_canvas(f.point(v), style) for v in e)
        out.append(
            f'<line class="brace" data-u="{e[0]}" data-v="{e[1]}" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
            f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="{style.brace}" stroke-dasharray="{style.brace_dash}" '
            f'stroke-width="{_fmt(style.stroke / 2)}"/>'
        )
    for v in f.graph.vertices:
        x, y = _to_canvas(f.point(v), style)
        out.append(f'<circle class="vertex" data-v="{v}" cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(style.vertex_radius)}"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def render_frames(
    x: FlexLike | Framework,
    style: RenderStyle = RenderStyle(),
    coloring: EdgeColoring | None = None,
    times: list[float] | None = None,
) -> list[str]:
    """Frames at ``times`` (default: ``style.frames`` uniform samples) on one shared canvas.

    A plain framework renders as a single frame.
    """
    if isinstance(x, Framework):
        return [render_svg(x, coloring, style)]
    if times is None:
        times = sample_times(x.domain, style.frames)
    frames = [x.evaluate(t) for t in times]
    vb = _viewbox(frames, style)
    return [render_svg(fr, coloring, style, vb) for fr in frames]
