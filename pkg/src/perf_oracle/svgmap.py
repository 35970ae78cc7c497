"""Minimal deterministic SVG heatmap rendering (no plotting dependency)."""

from __future__ import annotations

from xml.sax.saxutils import escape


def _lerp(a, b, t):
    return tuple(round(ai + (bi - ai) * t) for ai, bi in zip(a, b))


def _color(t: float, scheme: str) -> str:
    t = min(max(t, 0.0), 1.0)
    if scheme == "accuracy":  # dark blue (low) -> white -> dark red (high)
        stops = ((24, 32, 160), (245, 245, 245), (165, 16, 16))
    else:  # "distance": dark green (near) -> yellow -> dark red (far)
        stops = ((16, 112, 16), (240, 220, 80), (165, 16, 16))
    if t < 0.5:
        rgb = _lerp(stops[0], stops[1], t * 2.0)
    else:
        rgb = _lerp(stops[1], stops[2], (t - 0.5) * 2.0)
    return "#%02x%02x%02x" % rgb


def render_heatmap(values, row_labels, col_labels, scheme="accuracy", title="") -> str:
    """Render a matrix of floats (None = failed/missing, drawn gray) as SVG.

    The color range is normalized to the observed min/max so the pattern is
    visible regardless of absolute level; output bytes are deterministic.
    """
    rows, cols = len(values), len(values[0])
    cell, left, top = 36, 84, 40
    width = left + cols * cell + 12
    height = top + rows * cell + 28
    observed = [v for row in values for v in row if v is not None]
    lo = min(observed) if observed else 0.0
    hi = max(observed) if observed else 1.0
    span = hi - lo
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        parts.append(f'<text x="{left}" y="20" font-family="monospace" font-size="13">{escape(title)}</text>')
    for i, row in enumerate(values):
        for j, v in enumerate(row):
            x = left + j * cell
            y = top + i * cell
            if v is None:
                fill = "#cccccc"
            else:
                fill = _color((v - lo) / span if span > 0 else 0.5, scheme)
            parts.append(f'<rect x="{x}" y="{y}" width="{cell}" height="{cell}" fill="{fill}" stroke="white"/>')
    for j, label in enumerate(col_labels):
        x = left + j * cell + cell // 2
        parts.append(
            f'<text x="{x}" y="{top - 6}" font-family="monospace" font-size="10" text-anchor="middle">{label}</text>')
    for i, label in enumerate(row_labels):
        y = top + i * cell + cell // 2 + 4
        parts.append(
            f'<text x="{left - 6}" y="{y}" font-family="monospace" font-size="10" text-anchor="end">{label}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
