"""Static SVG figures of approximation and piercing scenes."""

import math
from typing import List, Optional, Sequence, Tuple
from xml.sax.saxutils import escape

import numpy as np

from pierce4.geometry import Line

PADDING = 0.05
FAMILY_COLORS = ("#1f77b4", "#ff7f0e", "#2ca02c", "#d62728", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f")

HATCH_DEFS = """\
<defs>
<pattern id="hatch" patternUnits="userSpaceOnUse" width="%(step)g" height="%(step)g" patternTransform="rotate(45)">
<line x1="0" y1="0" x2="0" y2="%(step)g" style="stroke:#888888;stroke-width:%(stroke)g"/>
</pattern>
</defs>
"""


def _fmt(points: Sequence[Sequence[float]]) -> str:
    # y is flipped so the figure reads with y pointing up
    return " ".join(f"{x:.6f},{-y:.6f}" for x, y in points)


class Scene:
    """Collects shapes, tracks the bounding box and writes a self-contained SVG."""

    def __init__(self, title: Optional[str] = None):
        self.title = title
        self.min_x = self.max_x = self.min_y = self.max_y = None
        self.commands: List[str] = []
        self.lines: List[Tuple[Line, str, str]] = []
        self.hatched = False

    def require(self, x: float, y: float):
        if self.min_x is None:
            self.min_x = self.max_x = x
            self.min_y = self.max_y = y
        else:
            self.min_x = min(self.min_x, x)
            self.max_x = max(self.max_x, x)
            self.min_y = min(self.min_y, y)
            self.max_y = max(self.max_y, y)

    @property
    def extent(self) -> float:
        if self.min_x is None:
            return 1.0
        return max(self.max_x - self.min_x, self.max_y - self.min_y, 1e-9)

    def polygon(self, points, color: str = "#000000", fill: str = "none", opacity: float = 1.0,
                label: Optional[str] = None, dashed: bool = False):
        points = np.asarray(points, dtype=float)
        for x, y in points:
            self.require(x, y)
        dash = ";stroke-dasharray:4,2" if dashed else ""
        fill_style = "url(#hatch)" if fill == "hatch" else fill
        self.hatched = self.hatched or fill == "hatch"
        title = f"<title>{escape(label)}</title>" if label else ""
        self.commands.append(
            f'<polygon points="{_fmt(points)}" '
            f'style="fill:{fill_style};fill-opacity:{opacity:g};stroke:{color};'
            f'stroke-width:1;vector-effect:non-scaling-stroke{dash}">{title}</polygon>'
        )

    def point(self, x: float, y: float, color: str = "#000000", label: Optional[str] = None):
        self.require(x, y)
        title = f"<title>{escape(label)}</title>" if label else ""
        self.commands.append(f'<circle cx="{x:.6f}" cy="{-y:.6f}" r="%(radius)g" style="fill:{color}">{title}</circle>')

    def line(self, line: Line, color: str = "#000000", label: str = ""):
        """Infinite line; clipped to the final view box on render."""
        self.lines.append((line, color, label))

    def _line_elements(self, x0: float, y0: float, x1: float, y1: float) -> List[str]:
        out = []
        center = np.array([(x0 + x1) / 2, (y0 + y1) / 2])
        reach = math.hypot(x1 - x0, y1 - y0)
        for line, color, label in self.lines:
            foot = center - line.signed_distance(center) * line.normal
            d = line.direction.vector * reach
            a, b = foot - d, foot + d
            title = f"<title>{escape(label)}</title>" if label else ""
            out.append(
                f'<line x1="{a[0]:.6f}" y1="{-a[1]:.6f}" x2="{b[0]:.6f}" y2="{-b[1]:.6f}" '
                f'style="stroke:{color};stroke-width:1;vector-effect:non-scaling-stroke">{title}</line>'
            )
        return out

    def render(self) -> str:
        pad = self.extent * PADDING
        x0 = (self.min_x if self.min_x is not None else 0.0) - pad
        y0 = (self.min_y if self.min_y is not None else 0.0) - pad
        x1 = (self.max_x if self.max_x is not None else 1.0) + pad
        y1 = (self.max_y if self.max_y is not None else 1.0) + pad
        width, height = x1 - x0, y1 - y0
        radius = 0.006 * max(width, height)

        parts = [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'viewBox="{x0:.6f} {-y1:.6f} {width:.6f} {height:.6f}" width="800" '
            f'height="{800 * height / width:.1f}">',
        ]
        if self.title:
            parts.append(f"<title>{escape(self.title)}</title>")
        if self.hatched:
            parts.append(HATCH_DEFS % {"step": 0.02 * max(width, height), "stroke": 0.004 * max(width, height)})
        parts.extend(cmd.replace("%(radius)g", f"{radius:g}") for cmd in self.commands)
        parts.extend(self._line_elements(x0, y0, x1, y1))
        parts.append("</svg>")
        return "\n".join(parts) + "\n"

    def save(self, filename: str):
        with open(filename, "w", encoding="utf-8") as f:
            f.write(self.render())


def approx_scene(body, result) -> Scene:
    """K, P, P' and Q as four polygon elements, plus the points where K touches P'."""
    scene = Scene(f"u = {result.u.degrees:.2f} deg, ratio = {result.ratio:.4f}")
    scene.polygon(result.Q.vertices, color="#999999", dashed=True, label="Q = 2P + t")
    scene.polygon(result.P_circ.vertices, color="#d62728", label="circumscribed parallelogram")
    scene.polygon(body.vertices, color="#000000", fill="#dddddd", opacity=0.6, label="K")
    scene.polygon(result.P.vertices, color="#1f77b4", fill="#1f77b4", opacity=0.3, label="P")
    if result.touch_points is not None:
        for side, p in zip("uuvv", result.touch_points):
            scene.point(float(p[0]), float(p[1]), color="#d62728", label=f"touches a side along {side}")
    return scene


def pierce_scene(inst, cert) -> Scene:
    """Translates colored by family (the excluded one hatched), the lines and the points."""
    scene = Scene(f"{cert.branch.value}: {len(cert.points)} points, family {cert.excluded_family} excluded")
    for i, k, x in inst.translates():
        color = FAMILY_COLORS[i % len(FAMILY_COLORS)]
        if i == cert.excluded_family:
            scene.polygon(inst.body.vertices + x, color=color, fill="hatch", label=f"F{i}[{k}] (excluded)")
        else:
            scene.polygon(inst.body.vertices + x, color=color, fill=color, opacity=0.15, label=f"F{i}[{k}]")
    if cert.ell is not None:
        scene.line(cert.ell, color="#000000", label="transversal")
    if cert.ell_prime is not None:
        scene.line(cert.ell_prime, color="#555555", label="lifted transversal")
    for n, p in enumerate(cert.points):
        scene.point(float(p[0]), float(p[1]), color="#000000", label=f"point {n}")
    return scene
