"""Plain SVG figures: the unit-circle panel and the traced polygon panel.

Coordinates are printed with a fixed number of decimals so that output is
byte-identical between runs.
"""

from __future__ import annotations

import numpy as np

from .prevertex import Label

PANEL = 400
MARGIN = 20
COLORS = {Label.CONVEX: "#1b7837", Label.CONCAVE: "#d95f02"}
B1_COLOR = "#2166ac"
B2_COLOR = "#b2182b"


def _f(x: float) -> str:
    return f"{x:.3f}"


class _Frame:
    """Affine map from a box in the plane to one panel (y axis flipped)."""

    def __init__(self, xmin, xmax, ymin, ymax, offset=0.0):
        span = max(xmax - xmin, ymax - ymin, 1e-12)
        self.scale = (PANEL - 2 * MARGIN) / span
        self.cx = 0.5 * (xmin + xmax)
        self.cy = 0.5 * (ymin + ymax)
        self.offset = offset
        self.box = (xmin, xmax, ymin, ymax)

    def __call__(self, z: complex) -> tuple[str, str]:
        x = self.offset + PANEL / 2 + (z.real - self.cx) * self.scale
        y = PANEL / 2 - (z.imag - self.cy) * self.scale
        return _f(x), _f(y)

    def length(self, r: float) -> str:
        return _f(r * self.scale)


def _polyline(frame, pts, color, width=1.5, dash=None) -> str:
    coords = " ".join(",".join(frame(complex(p))) for p in pts)
    extra = f' stroke-dasharray="{dash}"' if dash else ""
    return f'<polyline points="{coords}" fill="none" stroke="{color}" stroke-width="{width}"{extra}/>'


def _cross(frame, z, size, color) -> str:
    x, y = (float(c) for c in frame(z))
    return (
        f'<path d="M{_f(x - size)},{_f(y - size)} L{_f(x + size)},{_f(y + size)} '
        f'M{_f(x - size)},{_f(y + size)} L{_f(x + size)},{_f(y - size)}" stroke="{color}" stroke-width="2"/>'
    )


def disk_panel(spec, pvs) -> list[str]:
    """Unit circle, zeros of ``B1`` (circles) and ``B2`` (crosses), pre-vertices by label."""
    frame = _Frame(-1.1, 1.1, -1.1, 1.1)
    cx, cy = frame(0j)
    out = [
        f'<circle cx="{cx}" cy="{cy}" r="{frame.length(1.0)}" fill="none" stroke="#444" stroke-width="1"/>',
    ]
    for a in spec.b1.zeros:
        x, y = frame(a)
        out.append(f'<circle cx="{x}" cy="{y}" r="4" fill="none" stroke="{B1_COLOR}" stroke-width="2"/>')
    for b in spec.b2.zeros:
        out.append(_cross(frame, b, 4.0, B2_COLOR))
    if pvs is not None:
        for p in pvs.points:
            x, y = frame(p.z)
            out.append(f'<circle cx="{x}" cy="{y}" r="5" fill="{COLORS[p.label]}"/>')
    return out


def _clip_ray(start: complex, direction: complex, box) -> complex:
    """Point where the ray leaves the box (the start itself if it is outside)."""
    xmin, xmax, ymin, ymax = box
    ts = []
    if direction.real > 0:
        ts.append((xmax - start.real) / direction.real)
    elif direction.real < 0:
        ts.append((xmin - start.real) / direction.real)
    if direction.imag > 0:
        ts.append((ymax - start.imag) / direction.imag)
    elif direction.imag < 0:
        ts.append((ymin - start.imag) / direction.imag)
    t = max(0.0, min(ts)) if ts else 0.0
    return start + t * direction


def _bounding_box(trace):
    """Box around the polygon.

    Samples near a vertex at infinity can be huge, so with infinite vertices
    the box is sized by the finite vertices, the nearest point of each side
    and the median sample distance; everything outside is clipped.
    """
    pts = np.concatenate([np.atleast_1d(e) for e in trace.edge_samples])
    pts = pts[np.isfinite(pts)]
    verts = trace.finite_vertices()
    if trace.finite:
        xmin, xmax = pts.real.min(), pts.real.max()
        ymin, ymax = pts.imag.min(), pts.imag.max()
        pad = 0.1 * max(xmax - xmin, ymax - ymin, 1e-6)
        return xmin - pad, xmax + pad, ymin - pad, ymax + pad
    center = verts.mean() if verts.size else complex(np.median(pts.real), np.median(pts.imag))
    # the nearest point of every side must be visible
    near = [np.abs(np.asarray(e)[np.isfinite(e)] - center).min() for e in trace.edge_samples]
    spread = max([*near, *np.abs(verts - center)], default=0.0)
    half = 1.5 * max(spread, float(np.median(np.abs(pts - center))), 1e-6)
    return center.real - half, center.real + half, center.imag - half, center.imag + half


def polygon_panel(trace, offset=PANEL) -> list[str]:
    """Traced sides; sides running to infinity are extended to the bounding box."""
    box = _bounding_box(trace)
    frame = _Frame(*box, offset=offset)
    x0, y0 = frame(complex(box[0], box[3]))
    x1, y1 = frame(complex(box[1], box[2]))
    out = [
        '<clipPath id="polygon-box">'
        f'<rect x="{x0}" y="{y0}" width="{_f(float(x1) - float(x0))}" height="{_f(float(y1) - float(y0))}"/>'
        "</clipPath>",
        '<g clip-path="url(#polygon-box)">',
    ]
    n = len(trace.vertices)
    for k, (edge, ray) in enumerate(zip(trace.edge_samples, trace.rays)):
        pts = list(edge)
        out.append(_polyline(frame, pts, "#222"))
        if ray is None:
            continue
        inf_start = trace.vertices[k] is None
        inf_end = trace.vertices[(k + 1) % n] is None
        if inf_end:
            out.append(_polyline(frame, [pts[-1], _clip_ray(pts[-1], ray, box)], "#222", dash="4,3"))
        if inf_start:
            # rays point toward the infinite end; a side infinite at both ends points toward its end
            back = -ray if inf_end else ray
            out.append(_polyline(frame, [pts[0], _clip_ray(pts[0], back, box)], "#222", dash="4,3"))
    for v in trace.vertices:
        if v is not None:
            x, y = frame(v)
            out.append(f'<circle cx="{x}" cy="{y}" r="3" fill="#222"/>')
    out.append("</g>")
    return out


def figure(spec, pvs=None, trace=None) -> str:
    """Two-panel SVG document; the polygon panel is left empty without a trace."""
    width = 2 * PANEL if trace is not None else PANEL
    body = disk_panel(spec, pvs)
    if trace is not None:
        body += polygon_panel(trace)
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{PANEL}" '
        f'viewBox="0 0 {width} {PANEL}">'
    )
    return "\n".join([head, f'<rect width="{width}" height="{PANEL}" fill="white"/>', *body, "</svg>"]) + "\n"


def polygon_figure(trace) -> str:
    """The polygon panel alone."""
    head = f'<svg xmlns="http://www.w3.org/2000/svg" width="{PANEL}" height="{PANEL}" viewBox="0 0 {PANEL} {PANEL}">'
    body = polygon_panel(trace, offset=0.0)
    return "\n".join([head, f'<rect width="{PANEL}" height="{PANEL}" fill="white"/>', *body, "</svg>"]) + "\n"

