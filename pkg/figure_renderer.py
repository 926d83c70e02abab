"""
Deterministic SVG drawings of the construction.

Figure numbers:
    1       triangle with the circles on its three sides
    2       figure 1 plus the altitude CG and the offsets GH, GJ
    3..8    regions RA..RF shaded
    9       hypotenuse semicircle over the signed region conglomerate

The y axis is flipped while coordinates are emitted, so the numbers in the
document are screen coordinates and no transform attribute is needed.
"""

import logging
import math
import re
import xml.etree.ElementTree as ET
from enum import IntEnum
from typing import Dict, List, Sequence, Tuple

from pydantic import BaseModel, ConfigDict, Field

from errors import DomainError
from geometry_core import ConstructionScene, Point, chord_side
from region_model import RegionId, RegionSpec, region_spec

logger = logging.getLogger(__name__)

SVG_NS = "http://www.w3.org/2000/svg"
XML_HEADER = '<?xml version="1.0" encoding="UTF-8"?>\n'

CIRCLE_COLORS = {"D": "#1f4e9c", "E": "#c0392b", "F": "#2e8b57"}
TRIANGLE_COLOR = "#000000"
SHADE_OPACITY = "0.35"
LABEL_OFFSET_PX = 12.0
LABEL_FONT_PX = 14


class FigureId(IntEnum):
    BASE = 1
    ALTITUDES = 2
    REGION_A = 3
    REGION_B = 4
    REGION_C = 5
    REGION_D = 6
    REGION_E = 7
    REGION_F = 8
    CONGLOMERATE = 9

    @classmethod
    def parse(cls, value) -> "FigureId":
        try:
            return cls(int(value))
        except (TypeError, ValueError):
            raise DomainError(f"figure must be an integer from 1 to 9, got {value!r}") from None


class RenderOptions(BaseModel):
    model_config = ConfigDict(frozen=True)

    width_px: int = Field(480, ge=64)
    margin_frac: float = Field(0.08, gt=0, lt=0.5)
    decimals: int = Field(6, ge=1, le=12)
    show_labels: bool = True


_SHADED_REGION: Dict[FigureId, RegionId] = {
    FigureId.REGION_A: RegionId.RA,
    FigureId.REGION_B: RegionId.RB,
    FigureId.REGION_C: RegionId.RC,
    FigureId.REGION_D: RegionId.RD,
    FigureId.REGION_E: RegionId.RE,
    FigureId.REGION_F: RegionId.RF,
}

_ADDED = (RegionId.SA, RegionId.SB, RegionId.RA, RegionId.RB)
_SUBTRACTED = (RegionId.RC, RegionId.RD, RegionId.RE, RegionId.RF)


def figure_scale(scene: ConstructionScene, opts: RenderOptions) -> float:
    """Pixels per unit length: disk D's diameter spans the width inside the margins."""
    margin = opts.margin_frac * opts.width_px
    return (opts.width_px - 2 * margin) / (2 * scene.circleD.radius)


class _Canvas:
    """Maps scene coordinates to formatted screen coordinates."""

    def __init__(self, scene: ConstructionScene, opts: RenderOptions):
        self.scale = figure_scale(scene, opts)
        self.margin = opts.margin_frac * opts.width_px
        self.decimals = opts.decimals
        xmin, _, _, ymax = scene.circleD.bounding_box()
        self.xmin, self.ymax = xmin, ymax

    def num(self, value: float) -> str:
        text = f"{value:.{self.decimals}f}"
        if float(text) == 0.0:
            # no "-0.000000"
            text = f"{0.0:.{self.decimals}f}"
        return text

    def x(self, p: Point) -> str:
        return self.num(self.margin + (p.x - self.xmin) * self.scale)

    def y(self, p: Point) -> str:
        return self.num(self.margin + (self.ymax - p.y) * self.scale)

    def length(self, value: float) -> str:
        return self.num(value * self.scale)


def _named_points(scene: ConstructionScene) -> Dict[str, Point]:
    tri = scene.tri
    return {"A": tri.A, "B": tri.B, "C": tri.C, "D": scene.D, "E": scene.E, "F": scene.F,
            "G": scene.G, "H": scene.H, "J": scene.J}


def _region_path_data(spec: RegionSpec, canvas: _Canvas) -> str:
    side = spec.side
    # the flip keeps the displayed orientation, and sweep 1 runs clockwise as
    # displayed; a region left of its chord closes counterclockwise
    sweep = 0 if side > 0 else 1
    large = 1 if chord_side(spec.disk.center, spec.chord_from, spec.chord_to) == side else 0
    r = canvas.length(spec.disk.radius)
    start, end = spec.chord_from, spec.chord_to
    return (f"M {canvas.x(start)} {canvas.y(start)} L {canvas.x(end)} {canvas.y(end)} "
            f"A {r} {r} 0 {large} {sweep} {canvas.x(start)} {canvas.y(start)} Z")


def _disk_name(scene: ConstructionScene, spec: RegionSpec) -> str:
    for name in ("D", "E", "F"):
        if getattr(scene, "circle" + name) == spec.disk:
            return name
    return "D"


def _shaded_regions(fig: FigureId) -> List[Tuple[RegionId, str]]:
    if fig in _SHADED_REGION:
        return [(_SHADED_REGION[fig], "add")]
    if fig == FigureId.CONGLOMERATE:
        return ([(RegionId.SC, "target")] + [(region, "add") for region in _ADDED]
                + [(region, "subtract") for region in _SUBTRACTED])
    return []


def _segments(fig: FigureId) -> List[Tuple[str, str, str]]:
    if fig == FigureId.BASE:
        return []
    segments = [("C", "G", "6 4")]
    if fig == FigureId.ALTITUDES:
        segments += [("G", "H", "2 3"), ("G", "J", "2 3")]
    return segments


def _labels(fig: FigureId) -> Sequence[str]:
    if fig == FigureId.BASE:
        return "ABCDEF"
    if fig == FigureId.ALTITUDES:
        return "ABCDEFGHJ"
    return "ABCDEFG"


def _label_position(p: Point, centroid: Point, canvas: _Canvas) -> Tuple[str, str]:
    dx, dy = p.x - centroid.x, p.y - centroid.y
    norm = math.hypot(dx, dy)
    if norm == 0:
        dx, dy, norm = 1.0, 1.0, math.sqrt(2.0)
    px = canvas.margin + (p.x - canvas.xmin) * canvas.scale + LABEL_OFFSET_PX * dx / norm
    py = canvas.margin + (canvas.ymax - p.y) * canvas.scale - LABEL_OFFSET_PX * dy / norm
    return canvas.num(px), canvas.num(py)


def render_figure(scene: ConstructionScene, fig, opts: RenderOptions = None) -> str:
    """
    Render one figure as a self-contained SVG document.

    Args:
        scene: Construction scene
        fig: FigureId or integer 1..9
        opts: RenderOptions, defaults when None

    Returns:
        str: SVG text; identical inputs give identical bytes

    Raises:
        DomainError: If fig is not a figure number
    """
    fig = FigureId.parse(fig)
    opts = opts or RenderOptions()
    canvas = _Canvas(scene, opts)
    points = _named_points(scene)
    size = str(opts.width_px)

    root = ET.Element("svg", {
        "xmlns": SVG_NS,
        "version": "1.1",
        "width": size,
        "height": size,
        "viewBox": f"0 0 {size} {size}",
    })

    if fig == FigureId.CONGLOMERATE:
        defs = ET.SubElement(root, "defs")
        pattern = ET.SubElement(defs, "pattern", {
            "id": "hatch", "width": "6", "height": "6",
            "patternUnits": "userSpaceOnUse", "patternTransform": "rotate(45)",
        })
        ET.SubElement(pattern, "line", {"x1": "0", "y1": "0", "x2": "0", "y2": "6",
                                        "stroke": "#555555", "stroke-width": "1.5"})

    regions = ET.SubElement(root, "g", {"id": "regions"})
    for region, role in _shaded_regions(fig):
        spec = region_spec(region, scene)
        color = CIRCLE_COLORS[_disk_name(scene, spec)]
        fill = "url(#hatch)" if role == "subtract" else color
        ET.SubElement(regions, "path", {
            "class": f"region {role}",
            "data-region": region.value,
            "d": _region_path_data(spec, canvas),
            "fill": fill,
            "fill-opacity": "1" if role == "subtract" else SHADE_OPACITY,
            "stroke": "none",
        })

    circles = ET.SubElement(root, "g", {"id": "circles", "fill": "none", "stroke-width": "1.5"})
    for name in ("D", "E", "F"):
        circle = getattr(scene, "circle" + name)
        ET.SubElement(circles, "circle", {
            "id": f"circle-{name}",
            "cx": canvas.x(circle.center),
            "cy": canvas.y(circle.center),
            "r": canvas.length(circle.radius),
            "stroke": CIRCLE_COLORS[name],
        })

    edges = ET.SubElement(root, "g", {"id": "triangle", "stroke": TRIANGLE_COLOR, "stroke-width": "2"})
    for start, end in (("A", "B"), ("B", "C"), ("C", "A")):
        _line(edges, points[start], points[end], canvas, {"id": f"edge-{start}{end}"})

    segments = ET.SubElement(root, "g", {"id": "segments", "stroke": TRIANGLE_COLOR, "stroke-width": "1"})
    for start, end, dash in _segments(fig):
        _line(segments, points[start], points[end], canvas,
              {"id": f"segment-{start}{end}", "stroke-dasharray": dash})

    if opts.show_labels:
        tri = scene.tri
        centroid = Point((tri.A.x + tri.B.x + tri.C.x) / 3, (tri.A.y + tri.B.y + tri.C.y) / 3)
        labels = ET.SubElement(root, "g", {
            "id": "labels", "font-family": "serif", "font-size": str(LABEL_FONT_PX),
            "text-anchor": "middle", "dominant-baseline": "middle",
        })
        for name in _labels(fig):
            x, y = _label_position(points[name], centroid, canvas)
            text = ET.SubElement(labels, "text", {"x": x, "y": y})
            text.text = name

    ET.indent(root)
    logger.debug("Rendered figure %d at %d px", int(fig), opts.width_px)
    return XML_HEADER + ET.tostring(root, encoding="unicode") + "\n"


def _line(parent: ET.Element, start: Point, end: Point, canvas: _Canvas, extra: Dict[str, str]) -> None:
    attrs = dict(extra)
    attrs.update({"x1": canvas.x(start), "y1": canvas.y(start), "x2": canvas.x(end), "y2": canvas.y(end)})
    ET.SubElement(parent, "line", attrs)


_PATH_TOKEN = re.compile(r"[MLAZ]|-?\d+(?:\.\d+)?(?:[eE][-+]?\d+)?")


def _path_area(d: str) -> float:
    """
    Area enclosed by an M/L/A/Z path: shoelace over the vertices plus the
    circular segment of every arc.
    """
    tokens = _PATH_TOKEN.findall(d)
    vertices: List[Tuple[float, float]] = []
    arc_correction = 0.0
    i = 0
    while i < len(tokens):
        command = tokens[i]
        if command in ("M", "L"):
            vertices.append((float(tokens[i + 1]), float(tokens[i + 2])))
            i += 3
        elif command == "A":
            rx, large, sweep = float(tokens[i + 1]), int(tokens[i + 4]), int(tokens[i + 5])
            end = (float(tokens[i + 6]), float(tokens[i + 7]))
            start = vertices[-1]
            half = min(math.dist(start, end) / 2, rx)
            # center-to-chord distance; atan2 stays accurate for near half disks
            apothem = math.sqrt((rx - half) * (rx + half))
            beta = 2.0 * math.atan2(half, apothem)
            alpha = 2.0 * math.pi - beta if large else beta
            segment = rx * rx / 2 * (alpha - math.sin(alpha))
            arc_correction += segment if sweep else -segment
            vertices.append(end)
            i += 8
        elif command == "Z":
            i += 1
        else:
            raise DomainError(f"unsupported path token {command!r}")

    shoelace = 0.0
    for (x0, y0), (x1, y1) in zip(vertices, vertices[1:] + vertices[:1]):
        shoelace += x0 * y1 - x1 * y0
    return abs(shoelace / 2 + arc_correction)


def shaded_path_area(svg_text: str, scale: float) -> List[float]:
    """
    Re-integrate every shaded region path of a rendered figure.

    Args:
        svg_text: Document from render_figure
        scale: Pixels per unit length used when rendering (figure_scale)

    Returns:
        list: Areas in scene units, in document order
    """
    root = ET.fromstring(svg_text)
    areas = []
    for element in root.iter():
        if element.tag.rsplit("}", 1)[-1] != "path":
            continue
        if "region" not in element.get("class", "").split():
            continue
        areas.append(_path_area(element.get("d")) / (scale * scale))
    return areas


def write_figure(path, svg_text: str) -> None:
    """Write an SVG document as UTF-8 with LF line endings."""
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(svg_text)
    logger.info("Wrote figure to %s", path)


if __name__ == "__main__":
    from geometry_core import build_triangle, construct_scene

    demo_scene = construct_scene(build_triangle(3, 4))
    demo_opts = RenderOptions()
    svg = render_figure(demo_scene, FigureId.REGION_C, demo_opts)
    print(svg)
    print("shaded area:", shaded_path_area(svg, figure_scale(demo_scene, demo_opts)))
