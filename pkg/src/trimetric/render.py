"""Minimal SVG output for ball contours and comparison curves."""

from __future__ import annotations

from dataclasses import dataclass, field
from xml.sax.saxutils import escape, quoteattr

import numpy as np

CANVAS = 800
MARGIN = 0.02

DEFAULT_STYLES = {
    "s-ball": 'stroke="#000000" stroke-width="1.5" stroke-dasharray="6,4" fill="none"',
    "euclid": 'stroke="#1f77b4" stroke-width="1" fill="none"',
    "j-ball": 'stroke="#d62728" stroke-width="1" fill="none"',
    "k-ball": 'stroke="#2ca02c" stroke-width="1" fill="none"',
    "boundary": 'stroke="#7f7f7f" stroke-width="2" fill="none"',
}


@dataclass
class Curve:
    role: str
    points: np.ndarray
    closed: bool = True
    label: str = ""
    max_residual: float | None = None


@dataclass
class RenderSpec:
    viewport: tuple[tuple[float, float], tuple[float, float]] | None = None
    styles: dict[str, str] = field(default_factory=lambda: dict(DEFAULT_STYLES))
    resolution: int = 512

    def __post_init__(self):
        if self.resolution < 64:
            raise ValueError("resolution must be at least 64")
        if self.viewport is not None:
            (x0, y0), (x1, y1) = self.viewport
            if not (x1 > x0 and y1 > y0):
                raise ValueError("viewport must be nonempty")


def _fit_viewport(curves: list[Curve]) -> tuple[tuple[float, float], tuple[float, float]]:
    pts = np.concatenate([c.points for c in curves])
    lo, hi = pts.min(axis=0), pts.max(axis=0)
    span = float(max(hi[0] - lo[0], hi[1] - lo[1], 1e-12))
    mid = 0.5 * (lo + hi)
    return (mid[0] - span / 2, mid[1] - span / 2), (mid[0] + span / 2, mid[1] + span / 2)


def _fmt(v: float) -> str:
    return f"{v:.3f}"


def render_svg(curves: list[Curve], spec: RenderSpec | None = None, title: str = "") -> str:
    """Draw curves on an 800x800 canvas with equal aspect and y pointing up."""
    spec = spec or RenderSpec()
    if not curves:
        raise ValueError("nothing to draw")
    (x0, y0), (x1, y1) = spec.viewport or _fit_viewport(curves)
    inner = CANVAS * (1 - 2 * MARGIN)
    scale = inner / max(x1 - x0, y1 - y0)
    off = CANVAS * MARGIN

    def to_px(p: np.ndarray) -> np.ndarray:
        return np.column_stack([off + (p[:, 0] - x0) * scale, CANVAS - off - (p[:, 1] - y0) * scale])

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" '
        f'viewBox="0 0 {CANVAS} {CANVAS}">',
    ]
    if title:
        out.append(f"<title>{escape(title)}</title>")
    out.append(f'<rect x="0" y="0" width="{CANVAS}" height="{CANVAS}" fill="#ffffff"/>')
    for c in curves:
        style = spec.styles.get(c.role, DEFAULT_STYLES["euclid"])
        meta = f"{c.role} {c.label}".strip()
        if c.max_residual is not None:
            meta += f" max_residual={c.max_residual:.3e}"
        # "--" is not allowed inside XML comments
        out.append(f"<!-- {meta.replace('--', '- -')} -->")
        px = to_px(np.asarray(c.points, dtype=float))
        d = " ".join(f"{_fmt(a)},{_fmt(b)}" for a, b in px)
        tag = "polygon" if c.closed else "polyline"
        out.append(f"<{tag} points={quoteattr(d)} {style}/>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
