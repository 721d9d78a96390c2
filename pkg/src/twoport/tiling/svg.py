"""SVG drawing of a tiling. Coordinates are decimal approximations for display only."""
from __future__ import annotations

from xml.sax.saxutils import escape

from .geometry import OrthoPolygon, Tiling

RATIONAL_FILL = "#9ecae1"
IRRATIONAL_FILL = "#fdae6b"


def render_svg(tiling: Tiling, polygon: OrthoPolygon | None = None, *, size: int = 480, margin: int = 10) -> str:
    xs = [float(v) for r in tiling for v in (r.x0, r.x1)]
    ys = [float(v) for r in tiling for v in (r.y0, r.y1)]
    if polygon is not None:
        xs += [float(p[0]) for p in polygon.vertices]
        ys += [float(p[1]) for p in polygon.vertices]
    x0, x1, y0, y1 = min(xs), max(xs), min(ys), max(ys)
    span = max(x1 - x0, y1 - y0) or 1.0
    k = (size - 2 * margin) / span
    W = int((x1 - x0) * k) + 2 * margin
    H = int((y1 - y0) * k) + 2 * margin

    def X(v):
        return margin + (float(v) - x0) * k

    def Y(v):
        return H - margin - (float(v) - y0) * k

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">',
        "<!-- display only: coordinates are decimal approximations of exact values -->",
    ]
    if polygon is not None:
        pts = " ".join(f"{X(x):.3f},{Y(y):.3f}" for x, y in polygon.vertices)
        out.append(f'<polygon points="{pts}" fill="none" stroke="#000" stroke-width="2"/>')
    for r in tiling:
        fill = RATIONAL_FILL if r.ratio.is_rational() else IRRATIONAL_FILL
        title = escape(f"[{r.x0}, {r.x1}] x [{r.y0}, {r.y1}], ratio {r.ratio}")
        out.append(
            f'<rect x="{X(r.x0):.3f}" y="{Y(r.y1):.3f}" width="{float(r.width) * k:.3f}" '
            f'height="{float(r.height) * k:.3f}" fill="{fill}" stroke="#333" stroke-width="1">'
            f"<title>{title}</title></rect>"
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
