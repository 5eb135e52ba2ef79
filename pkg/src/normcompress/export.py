"""CSV, SVG and JSON writers. Output bytes depend only on the inputs."""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .config import TOL

SCHEMA_VERSION = 1


def fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return repr(float(v))
    return str(v)


def csv_header(command: str, seed, params: dict | None = None) -> list[str]:
    lines = [f"# schema_version={SCHEMA_VERSION} command={command} seed={seed}"]
    for key, val in sorted((params or {}).items()):
        lines.append(f"# {key}={fmt(val)}")
    tol = ",".join(f"{k}:{fmt(v)}" for k, v in TOL.as_dict().items())
    lines.append(f"# tolerances={tol}")
    return lines


def write_csv(path, header: list[str], columns: list[str], rows) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    out = list(header) + [",".join(columns)]
    out += [",".join(fmt(v) for v in row) for row in rows]
    path.write_text("\n".join(out) + "\n", encoding="utf-8")
    return path


def write_json(path, obj) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path


def _c(p: complex) -> str:
    # SVG's y axis points down
    return f"{p.real:.6f},{-p.imag:.6f}"


class SvgCanvas:
    """Layered SVG in data coordinates; the view box is the data bounding box plus 10%."""

    def __init__(self):
        self.layers: list[tuple[str, list[str]]] = []
        self._pts: list[complex] = []

    def layer(self, name: str) -> list[str]:
        items: list[str] = []
        self.layers.append((name, items))
        return items

    def _track(self, pts):
        self._pts.extend(complex(p) for p in np.atleast_1d(pts))

    def points(self, layer, pts, color="black", radius=0.006):
        pts = np.atleast_1d(np.asarray(pts, dtype=np.complex128))
        self._track(pts)
        layer.extend(f'<circle cx="{p.real:.6f}" cy="{-p.imag:.6f}" r="{{r{radius}}}" fill="{color}"/>' for p in pts)

    def polyline(self, layer, pts, color="black", width=0.004, closed=False, fill="none"):
        pts = np.atleast_1d(np.asarray(pts, dtype=np.complex128))
        if len(pts) == 0:
            return
        self._track(pts)
        tag = "polygon" if closed else "polyline"
        coords = " ".join(_c(p) for p in pts)
        layer.append(f'<{tag} points="{coords}" fill="{fill}" stroke="{color}" stroke-width="{{w{width}}}"/>')

    def ellipse(self, layer, center, rx, ry, angle_deg, color="black", width=0.003):
        self._track([center + rx, center - rx, center + 1j * rx, center - 1j * rx])
        layer.append(
            f'<ellipse cx="{center.real:.6f}" cy="{-center.imag:.6f}" rx="{rx:.6f}" ry="{ry:.6f}" '
            f'transform="rotate({-angle_deg:.6f} {center.real:.6f} {-center.imag:.6f})" '
            f'fill="none" stroke="{color}" stroke-width="{{w{width}}}"/>')

    def render(self, legend: list[str]) -> str:
        pts = np.array(self._pts or [0j])
        lo_x, hi_x = pts.real.min(), pts.real.max()
        lo_y, hi_y = -pts.imag.max(), -pts.imag.min()
        span = max(hi_x - lo_x, hi_y - lo_y, 1e-9)
        m = 0.1 * span
        x0, y0 = lo_x - m, lo_y - m
        w, h = hi_x - lo_x + 2 * m, hi_y - lo_y + 2 * m
        scale = max(w, h)

        def size(text):
            # sizes are given relative to a unit-sized figure
            out = []
            for piece in text.split("{")[1:]:
                key, rest = piece.split("}", 1)
                out.append((key, rest))
            head = text.split("{")[0]
            return head + "".join(f"{float(k[1:]) * scale:.6f}" + r for k, r in out)

        lines = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{x0:.6f} {y0:.6f} {w:.6f} {h:.6f}" '
            'width="800" height="800" preserveAspectRatio="xMidYMid meet">',
        ]
        for name, items in self.layers:
            lines.append(f'<g id="{name}">')
            lines.extend(size(s) for s in items)
            lines.append("</g>")
        fs = 0.035 * scale
        lines.append('<g id="legend">')
        for i, text in enumerate(legend):
            lines.append(f'<text x="{x0 + 0.02 * scale:.6f}" y="{y0 + (i + 1.2) * fs:.6f}" '
                         f'font-size="{fs:.6f}" font-family="monospace">{_escape(text)}</text>')
        lines.append("</g>")
        lines.append("</svg>")
        return "\n".join(lines) + "\n"

    def write(self, path, legend: list[str]) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.render(legend), encoding="utf-8")
        return path


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
