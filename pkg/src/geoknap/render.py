"""SVG rendering of packings."""
from __future__ import annotations

from fractions import Fraction

from .core import Packing, _item_map


def item_color(item_id: int) -> str:
    hue = (item_id * 137.508) % 360
    return f"hsl({hue:.1f},65%,60%)"


def _fmt(v) -> str:
    if isinstance(v, Fraction):
        v = float(v)
    if isinstance(v, float):
        return f"{v:.6g}"
    return str(v)


def render_svg(packing: Packing, items, scale: int = 20) -> str:
    """SVG with one rect per placement; y grows upwards as in the packing."""
    m = _item_map(items)
    r = packing.region
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{_fmt(r.x)} {_fmt(r.y)} {_fmt(r.w)} {_fmt(r.h)}" '
        f'width="{_fmt(r.w * scale)}" height="{_fmt(r.h * scale)}">',
        f'<rect class="region" x="{_fmt(r.x)}" y="{_fmt(r.y)}" width="{_fmt(r.w)}" height="{_fmt(r.h)}" '
        f'fill="white" stroke="black" stroke-width="0.05"/>',
        '<g class="items">',
    ]
    for pl in packing.canonical().placements:
        q = pl.rect(m[pl.item_id])
        y = r.y + r.y2 - q.y2  # flip so the origin sits bottom-left
        lines.append(f'<rect data-id="{pl.item_id}" x="{_fmt(q.x)}" y="{_fmt(y)}" '
                     f'width="{_fmt(q.w)}" height="{_fmt(q.h)}" fill="{item_color(pl.item_id)}" '
                     f'stroke="black" stroke-width="0.05"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
