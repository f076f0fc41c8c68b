"""Minimal standalone SVG line and step charts.

One panel per series, stacked vertically with a shared time axis. Each
panel draws exactly one ``<path class="series">`` so tests can count them.
"""

from dataclasses import dataclass
from typing import Sequence
from xml.sax.saxutils import escape

STEP = "step"
LINE = "line"


@dataclass
class Panel:
    title: str
    ts: Sequence[float]
    vs: Sequence[float]
    kind: str = LINE  # "step": hold each value until the next t


def _fmt(v: float) -> str:
    return f"{v:.3f}".rstrip("0").rstrip(".")


def _path(panel: Panel, sx, sy) -> str:
    if not len(panel.ts):
        return ""
    cmds = [f"M{_fmt(sx(panel.ts[0]))},{_fmt(sy(panel.vs[0]))}"]
    for k in range(1, len(panel.ts)):
        x, y = sx(panel.ts[k]), sy(panel.vs[k])
        if panel.kind == STEP:
            cmds.append(f"H{_fmt(x)}")
            cmds.append(f"V{_fmt(y)}")
        else:
            cmds.append(f"L{_fmt(x)},{_fmt(y)}")
    return " ".join(cmds)


def render(panels: Sequence[Panel], t_end: float, width=800, panel_height=110, title=None) -> str:
    margin_l, margin_r, gap, top = 60, 20, 30, 30 if title else 10
    height = top + len(panels) * (panel_height + gap) + 10
    plot_w = width - margin_l - margin_r
    t_end = t_end or 1.0
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
    ]
    if title:
        out.append(f'<text x="{margin_l}" y="18" font-size="13">{escape(title)}</text>')
    for i, panel in enumerate(panels):
        y0 = top + i * (panel_height + gap) + 14
        finite = [v for v in panel.vs if v == v]
        vmax = max([1.0] + finite)

        def sx(t, _w=plot_w):
            return margin_l + _w * t / t_end

        def sy(v, _y0=y0, _vmax=vmax):
            return _y0 + panel_height * (1 - v / _vmax)

        out.append('<g class="panel">')
        out.append(f'<text x="{margin_l}" y="{_fmt(y0 - 4)}">{escape(panel.title)}</text>')
        out.append(
            f'<rect x="{margin_l}" y="{_fmt(y0)}" width="{plot_w}" height="{panel_height}" '
            'fill="none" stroke="#bbb"/>'
        )
        out.append(f'<text x="{margin_l - 6}" y="{_fmt(y0 + 4)}" text-anchor="end">{_fmt(vmax)}</text>')
        out.append(
            f'<text x="{margin_l - 6}" y="{_fmt(y0 + panel_height)}" text-anchor="end">0</text>'
        )
        out.append(
            f'<path class="series" d="{_path(panel, sx, sy)}" fill="none" '
            f'stroke="#1f5fa8" stroke-width="1.5"/>'
        )
        out.append("</g>")
    y_axis = top + len(panels) * (panel_height + gap)
    out.append(f'<text x="{margin_l}" y="{y_axis}">0</text>')
    out.append(f'<text x="{margin_l + plot_w}" y="{y_axis}" text-anchor="end">{_fmt(t_end)}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
