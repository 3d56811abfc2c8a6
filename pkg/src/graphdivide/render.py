"""SVG pictures of a product: the divide, its doubling and the link diagram.

Three panels are stacked vertically, each scaled to its own bounding box:

1. the graph divide (thick), with vertex signs and double points;
2. the doubled oriented divide with arrowheads, plus the offset copy when
   requested;
3. the resolved link diagram with gaps where a strand passes under; it is
   scaled to the curves, so detour legs leave the panel.

Output is deterministic: coordinates are printed with fixed precision.
"""

from __future__ import annotations

from xml.sax.saxutils import escape

from .diagram import LinkDiagram, build_diagram
from .doubling import double, layout, offset
from .dsl import emit
from .tangles import Sign, TangleProduct

PANEL_W = 640
PANEL_H = 240
MARGIN = 20
COLORS = ("#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b")


class _Frame:
    """Maps model coordinates (y up) into one panel (y down)."""

    def __init__(self, points, top):
        xs = [float(p[0]) for p in points]
        ys = [float(p[1]) for p in points]
        self.x0, self.y1 = min(xs), max(ys)
        w = max(max(xs) - self.x0, 1e-9)
        h = max(self.y1 - min(ys), 1e-9)
        self.k = min((PANEL_W - 2 * MARGIN) / w, (PANEL_H - 2 * MARGIN) / h)
        self.top = top

    def __call__(self, p):
        x = MARGIN + (float(p[0]) - self.x0) * self.k
        y = self.top + MARGIN + (self.y1 - float(p[1])) * self.k
        return f"{x:.2f},{y:.2f}"


def _polyline(frame, pts, color, width, closed=False, extra=""):
    tag = "polygon" if closed else "polyline"
    coords = " ".join(frame(p) for p in pts)
    return (
        f'<{tag} points="{coords}" fill="none" stroke="{color}" '
        f'stroke-width="{width}" stroke-linejoin="round"{extra}/>'
    )


def _divide_panel(p: TangleProduct, top):
    drawing = layout(p)
    pts = [q for poly in drawing.polylines for q in poly]
    frame = _Frame(pts, top)
    out = ['<g id="divide">']
    for poly in drawing.polylines:
        out.append(_polyline(frame, poly, "black", 4))
    for v, sign in drawing.vertices:
        x, y = frame(v).split(",")
        fill = "white" if sign is Sign.MINUS else "black"
        out.append(f'<circle cx="{x}" cy="{y}" r="4" fill="{fill}" stroke="black"/>')
        if sign is not None:
            out.append(f'<text x="{x}" y="{float(y) - 8:.2f}" font-size="12" text-anchor="middle">{sign.value}</text>')
    for q in drawing.double_points:
        x, y = frame(q).split(",")
        out.append(f'<circle cx="{x}" cy="{y}" r="3" fill="red"/>')
    out.append("</g>")
    return out


def _doubled_panel(p: TangleProduct, top, side):
    d = double(p)
    curves = list(d.curves)
    extra = list(offset(d, side).curves) if side else []
    frame = _Frame([q for c in curves + extra for q in c], top)
    out = ['<g id="doubled">']
    for i, c in enumerate(curves):
        out.append(_polyline(frame, c, COLORS[i % len(COLORS)], 1.5, True, ' marker-mid="url(#arrow)"'))
    for c in extra:
        out.append(_polyline(frame, c, "#999999", 1, True, ' stroke-dasharray="3,2"'))
    out.append("</g>")
    return out


def _diagram_panel(diag: LinkDiagram, base_curves, top):
    # scale to the curves themselves; detour legs run off the panel
    frame = _Frame([q for c in base_curves for q in c], top)
    out = [
        f'<clipPath id="diagram-clip"><rect x="0" y="{top}" width="{PANEL_W}" height="{PANEL_H}"/></clipPath>',
        '<g id="diagram" clip-path="url(#diagram-clip)">',
    ]
    for i, c in enumerate(diag.routed):
        out.append(_polyline(frame, c, COLORS[i % len(COLORS)], 1.5, True))
    # redraw a short piece of the over strand on a white halo
    for x in diag.crossings:
        ci, si = x.over
        c = diag.routed[ci]
        a, b = c[si], c[(si + 1) % len(c)]
        fa = [float(v) for v in frame(a).split(",")]
        fb = [float(v) for v in frame(b).split(",")]
        cx, cy = (float(v) for v in frame(x.point).split(","))
        dx, dy = fb[0] - fa[0], fb[1] - fa[1]
        n = max((dx * dx + dy * dy) ** 0.5, 1e-9)
        ux, uy = 4 * dx / n, 4 * dy / n
        seg = f'x1="{cx - ux:.2f}" y1="{cy - uy:.2f}" x2="{cx + ux:.2f}" y2="{cy + uy:.2f}"'
        out.append(f'<line {seg} stroke="white" stroke-width="5"/>')
        out.append(f'<line {seg} stroke="{COLORS[ci % len(COLORS)]}" stroke-width="1.5"/>')
    out.append("</g>")
    return out


def render_svg(p: TangleProduct, offset_side: str | None = "left", diagram: LinkDiagram | None = None) -> str:
    """SVG document with the three panels for product p."""
    base = double(p).curves
    if diagram is None:
        diagram = build_diagram(base)
    body = []
    body += _divide_panel(p, 0)
    body += _doubled_panel(p, PANEL_H, offset_side)
    body += _diagram_panel(diagram, base, 2 * PANEL_H)
    height = 3 * PANEL_H
    head = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{PANEL_W}" height="{height}" '
        f'viewBox="0 0 {PANEL_W} {height}">',
        f"<title>{escape(emit(p))}</title>",
        "<defs>",
        '<marker id="arrow" viewBox="0 0 10 10" refX="5" refY="5" markerWidth="5" '
        'markerHeight="5" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="black"/></marker>',
        "</defs>",
        f'<rect width="{PANEL_W}" height="{height}" fill="white"/>',
    ]
    return "\n".join(head + body + ["</svg>"]) + "\n"
