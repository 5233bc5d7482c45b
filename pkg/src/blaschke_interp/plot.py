"""Deterministic SVG drawing of a zero configuration on the unit disk."""

from __future__ import annotations

import math
from typing import Optional, Sequence

SIZE = 400
CENTER = SIZE / 2
SCALE = 170.0


def _xy(r: float, theta: float) -> tuple:
    # SVG y axis points down
    return CENTER + SCALE * r * math.cos(theta), CENTER - SCALE * r * math.sin(theta)


def render_svg(
    zeros: Sequence[complex],
    boundary_points: Sequence[float] = (),
    R: Optional[float] = None,
    marked_points: Sequence[float] = (),
    title: str = "",
) -> str:
    """Unit circle, arc boundary ticks, anchor rays, zeros, and the annulus |z| >= R."""
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" '
        f'viewBox="0 0 {SIZE} {SIZE}">',
    ]
    if title:
        out.append(f"<title>{title}</title>")
    out.append(f'<rect width="{SIZE}" height="{SIZE}" fill="white"/>')
    if R is not None and 0.0 < R < 1.0:
        outer, inner = SCALE, SCALE * R
        out.append(
            f'<path class="annulus" fill="#e6e6e6" fill-rule="evenodd" d="'
            f"M {CENTER + outer:.3f} {CENTER:.3f} A {outer:.3f} {outer:.3f} 0 1 0 {CENTER - outer:.3f} {CENTER:.3f} "
            f"A {outer:.3f} {outer:.3f} 0 1 0 {CENTER + outer:.3f} {CENTER:.3f} Z "
            f"M {CENTER + inner:.3f} {CENTER:.3f} A {inner:.3f} {inner:.3f} 0 1 0 {CENTER - inner:.3f} {CENTER:.3f} "
            f'A {inner:.3f} {inner:.3f} 0 1 0 {CENTER + inner:.3f} {CENTER:.3f} Z"/>'
        )
    out.append(
        f'<circle class="unit-circle" cx="{CENTER:.3f}" cy="{CENTER:.3f}" r="{SCALE:.3f}" '
        'fill="none" stroke="black" stroke-width="1.5"/>'
    )
    for theta in boundary_points:
        x1, y1 = _xy(0.94, theta)
        x2, y2 = _xy(1.06, theta)
        out.append(
            f'<line class="tick" x1="{x1:.3f}" y1="{y1:.3f}" x2="{x2:.3f}" y2="{y2:.3f}" '
            'stroke="black" stroke-width="2"/>'
        )
    for theta in marked_points:
        x, y = _xy(1.0, theta)
        out.append(
            f'<circle class="marked" cx="{x:.3f}" cy="{y:.3f}" r="4.000" fill="none" stroke="#c0392b" stroke-width="1.5"/>'
        )
    for z in zeros:
        theta = math.atan2(z.imag, z.real)
        x, y = _xy(1.0, theta)
        out.append(
            f'<line class="ray" x1="{CENTER:.3f}" y1="{CENTER:.3f}" x2="{x:.3f}" y2="{y:.3f}" '
            'stroke="#7f7f7f" stroke-width="0.8" stroke-dasharray="4 3"/>'
        )
    for z in zeros:
        x, y = _xy(abs(z), math.atan2(z.imag, z.real))
        out.append(f'<circle class="zero" cx="{x:.3f}" cy="{y:.3f}" r="3.000" fill="black"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
