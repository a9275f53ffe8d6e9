"""Deterministic SVG rendering: precision/recall scatter and delta bars.

SVG is emitted directly (no plotting library) so artifacts are
byte-stable: fixed canvas, fixed float formatting, no timestamps.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from ..analysis.aggregate import iso_f1_curve, iso_f1_start

# Category code -> marker shape; domain -> fill; size bucket -> outline style.
_FILL = {"general": "#6495ED", "specialized": "#C71585", "mixed": "#FF7F50"}
_DASH = {0: "2,2", 1: "6,3", 2: None}

ISO_F1_DEFAULT = (0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8)


@dataclass(frozen=True)
class PlotPoint:
    label: str
    category: int
    domain: str
    size_bucket: int
    recall: float
    precision: float


def _fmt(value: float) -> str:
    return f"{value:.2f}"


class _Canvas:
    def __init__(self, width: int, height: int):
        self.width = width
        self.height = height
        self.parts: list[str] = [
            f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" '
            f'height="{height}" viewBox="0 0 {width} {height}">',
            f'<rect width="{width}" height="{height}" fill="white"/>',
        ]

    def add(self, element: str) -> None:
        self.parts.append(element)

    def text(self, x, y, content, size=11, anchor="start", fill="#333333"):
        self.add(
            f'<text x="{_fmt(x)}" y="{_fmt(y)}" font-size="{size}" '
            f'font-family="sans-serif" text-anchor="{anchor}" fill="{fill}">{content}</text>'
        )

    def render(self) -> str:
        return "\n".join(self.parts + ["</svg>"]) + "\n"


class _Axes:
    """Maps data space [0,1]x[0,1] onto the pixel plot area."""

    def __init__(self, canvas: _Canvas, left=70, right=30, top=30, bottom=50):
        self.canvas = canvas
        self.x0 = left
        self.x1 = canvas.width - right
        self.y0 = canvas.height - bottom
        self.y1 = top

    def px(self, x: float) -> float:
        return self.x0 + x * (self.x1 - self.x0)

    def py(self, y: float) -> float:
        return self.y0 + y * (self.y1 - self.y0)

    def draw_frame(self, xlabel: str, ylabel: str) -> None:
        c = self.canvas
        c.add(
            f'<rect x="{_fmt(self.x0)}" y="{_fmt(self.y1)}" '
            f'width="{_fmt(self.x1 - self.x0)}" height="{_fmt(self.y0 - self.y1)}" '
            f'fill="none" stroke="#888888"/>'
        )
        for i in range(11):
            v = i / 10
            c.add(
                f'<line x1="{_fmt(self.px(v))}" y1="{_fmt(self.y0)}" '
                f'x2="{_fmt(self.px(v))}" y2="{_fmt(self.y0 + 4)}" stroke="#888888"/>'
            )
            c.text(self.px(v), self.y0 + 16, f"{v:.1f}", size=9, anchor="middle")
            c.add(
                f'<line x1="{_fmt(self.x0 - 4)}" y1="{_fmt(self.py(v))}" '
                f'x2="{_fmt(self.x0)}" y2="{_fmt(self.py(v))}" stroke="#888888"/>'
            )
            c.text(self.x0 - 8, self.py(v) + 3, f"{v:.1f}", size=9, anchor="end")
        c.text((self.x0 + self.x1) / 2, self.y0 + 34, xlabel, anchor="middle")
        c.add(
            f'<text x="16" y="{_fmt((self.y0 + self.y1) / 2)}" font-size="11" '
            f'font-family="sans-serif" text-anchor="middle" fill="#333333" '
            f'transform="rotate(-90 16 {_fmt((self.y0 + self.y1) / 2)})">{ylabel}</text>'
        )


def _marker(axes: _Axes, point: PlotPoint) -> str:
    x, y = axes.px(point.recall), axes.py(point.precision)
    fill = _FILL.get(point.domain, "#6495ED")
    dash = _DASH.get(point.size_bucket)
    style = f'fill="{fill}" stroke="#333333" stroke-width="1.5" class="marker"'
    if dash:
        style += f' stroke-dasharray="{dash}"'
    r = 6.0
    if point.category == 0:
        return f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="{_fmt(r)}" {style}/>'
    if point.category == 1:
        pts = f"{_fmt(x)},{_fmt(y - r)} {_fmt(x - r)},{_fmt(y + r)} {_fmt(x + r)},{_fmt(y + r)}"
        return f'<polygon points="{pts}" {style}/>'
    return (
        f'<rect x="{_fmt(x - r)}" y="{_fmt(y - r)}" width="{_fmt(2 * r)}" '
        f'height="{_fmt(2 * r)}" {style}/>'
    )


def _legend(canvas: _Canvas, y: float) -> None:
    shape_row = (("circle", "AutoEncoding"), ("triangle", "AutoRegressive"), ("square", "TextToText"))
    x = 70.0
    for shape, label in shape_row:
        if shape == "circle":
            canvas.add(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="5" fill="#cccccc" stroke="#333333"/>')
        elif shape == "triangle":
            pts = f"{_fmt(x)},{_fmt(y - 5)} {_fmt(x - 5)},{_fmt(y + 5)} {_fmt(x + 5)},{_fmt(y + 5)}"
            canvas.add(f'<polygon points="{pts}" fill="#cccccc" stroke="#333333"/>')
        else:
            canvas.add(f'<rect x="{_fmt(x - 5)}" y="{_fmt(y - 5)}" width="10" height="10" fill="#cccccc" stroke="#333333"/>')
        canvas.text(x + 10, y + 4, label, size=10)
        x += 110
    x = 70.0
    for domain, label in (("general", "general domain"), ("specialized", "in-domain only"), ("mixed", "mixed domain")):
        canvas.add(f'<rect x="{_fmt(x - 5)}" y="{_fmt(y + 15)}" width="10" height="10" fill="{_FILL[domain]}"/>')
        canvas.text(x + 10, y + 24, label, size=10)
        x += 110
    x = 70.0
    for bucket, label in ((0, "under 100M"), (1, "100M to 130M"), (2, "over 130M")):
        dash = _DASH[bucket]
        dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
        canvas.add(
            f'<line x1="{_fmt(x - 5)}" y1="{_fmt(y + 45)}" x2="{_fmt(x + 25)}" '
            f'y2="{_fmt(y + 45)}" stroke="#333333" stroke-width="2"{dash_attr}/>'
        )
        canvas.text(x + 32, y + 49, label, size=10)
        x += 130


def pr_scatter(
    points: Sequence[PlotPoint],
    iso_f1_values: Sequence[float] = ISO_F1_DEFAULT,
    n_curve_points: int = 60,
) -> str:
    """Recall/precision scatter with iso-F1 guide curves.

    Marker shape encodes the model category, fill color the pre-training
    domain, outline style the size bucket.
    """
    canvas = _Canvas(720, 660)
    axes = _Axes(canvas, bottom=150)
    axes.draw_frame("Recall", "Precision")
    _legend(canvas, y=canvas.height - 75)

    for f1 in iso_f1_values:
        start = iso_f1_start(f1) + 1e-9
        recalls = [start + (1.0 - start) * i / (n_curve_points - 1) for i in range(n_curve_points)]
        precisions = iso_f1_curve(f1, recalls)
        coords = " ".join(
            f"{_fmt(axes.px(r))},{_fmt(axes.py(min(p, 1.0)))}"
            for r, p in zip(recalls, precisions)
        )
        canvas.add(
            f'<polyline points="{coords}" fill="none" stroke="#aaaaaa" '
            f'stroke-dasharray="4,3" class="iso-f1"/>'
        )
        canvas.text(axes.px(1.0) - 30, axes.py(float(precisions[-1])) - 4,
                    f"F1={f1:.1f}", size=8, fill="#999999")

    for point in sorted(points, key=lambda p: p.label):
        canvas.add(_marker(axes, point))
        canvas.text(axes.px(point.recall) + 8, axes.py(point.precision) - 6,
                    point.label, size=9)
    return canvas.render()


def delta_bars(deltas: dict[str, tuple[float, float, float]], title: str = "") -> str:
    """Grouped bars of (dP, dR, dF1) per model, percentage points."""
    models = sorted(deltas)
    canvas = _Canvas(max(360, 60 + 66 * len(models)), 420)
    top, bottom, left = 40, 90, 56
    plot_h = canvas.height - top - bottom
    limit = max(1.0, max(abs(v) for vals in deltas.values() for v in vals))
    scale = (plot_h / 2) / limit
    zero_y = top + plot_h / 2

    colors = ("#4878a8", "#b85c5c", "#6aa86a")
    labels = ("dP", "dR", "dF1")
    if title:
        canvas.text(canvas.width / 2, 20, title, anchor="middle", size=13)
    canvas.add(
        f'<line x1="{_fmt(left)}" y1="{_fmt(zero_y)}" x2="{_fmt(canvas.width - 20)}" '
        f'y2="{_fmt(zero_y)}" stroke="#888888"/>'
    )
    for i, (color, label) in enumerate(zip(colors, labels)):
        x = left + 80 * i
        canvas.add(f'<rect x="{_fmt(x)}" y="{_fmt(canvas.height - 24)}" width="10" height="10" fill="{color}"/>')
        canvas.text(x + 14, canvas.height - 15, label, size=10)

    bar_w = 16
    for m_idx, model in enumerate(models):
        group_x = left + 10 + m_idx * 66
        for v_idx, value in enumerate(deltas[model]):
            x = group_x + v_idx * (bar_w + 2)
            height = abs(value) * scale
            y = zero_y - height if value >= 0 else zero_y
            canvas.add(
                f'<rect x="{_fmt(x)}" y="{_fmt(y)}" width="{_fmt(bar_w)}" '
                f'height="{_fmt(height)}" fill="{colors[v_idx]}" class="delta-bar"/>'
            )
        canvas.text(group_x + 1.5 * bar_w, zero_y + plot_h / 2 + 16, model, size=9,
                    anchor="middle")
    return canvas.render()
