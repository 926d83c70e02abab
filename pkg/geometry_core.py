"""
Canonical coordinates and primitive constructions for the three-circle figure.

The right triangle is always placed with the right angle at the origin:
C = (0, 0), B = (a, 0), A = (0, b). Circles D, E and F have the sides AB,
AC and CB as diameters, and G is the foot of the altitude from C onto AB.

The hypotenuse c is computed as the Euclidean norm |A - B|. This module
verifies area identities; it does not try to reproduce the non-circular
logical order of the proof in its arithmetic.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Tuple

from errors import DomainError

logger = logging.getLogger(__name__)

DEFAULT_TOLERANCE = 1e-9


def relative_error(value: float, reference: float) -> float:
    """
    Error of value against reference: relative when the reference is nonzero,
    absolute otherwise.
    """
    if reference == 0:
        return abs(value)
    return abs(value - reference) / abs(reference)


def within_tolerance(value: float, reference: float, tol: float = DEFAULT_TOLERANCE) -> bool:
    return relative_error(value, reference) <= tol


@dataclass(frozen=True)
class Point:
    x: float
    y: float

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise DomainError(f"point coordinates must be finite, got ({self.x}, {self.y})")

    def as_tuple(self):
        return (self.x, self.y)


@dataclass(frozen=True)
class CircleSpec:
    center: Point
    radius: float

    def __post_init__(self):
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise DomainError(f"circle radius must be positive, got {self.radius}")

    def contains(self, p: Point) -> bool:
        """Strict interior test; boundary points are outside."""
        return distance(p, self.center) < self.radius

    def bounding_box(self):
        """(xmin, xmax, ymin, ymax) of the disk."""
        cx, cy, r = self.center.x, self.center.y, self.radius
        return (cx - r, cx + r, cy - r, cy + r)


@dataclass(frozen=True)
class RightTriangle:
    """Right triangle in the canonical frame; legs a = |CB|, b = |AC|."""

    a: float
    b: float
    c: float
    A: Point
    B: Point
    C: Point


@dataclass(frozen=True)
class ConstructionScene:
    tri: RightTriangle
    D: Point
    E: Point
    F: Point
    circleD: CircleSpec
    circleE: CircleSpec
    circleF: CircleSpec
    G: Point
    H: Point
    J: Point
    theta_deg: float


def distance(p: Point, q: Point) -> float:
    return math.hypot(p.x - q.x, p.y - q.y)


def midpoint(p: Point, q: Point) -> Point:
    return Point((p.x + q.x) / 2, (p.y + q.y) / 2)


def signed_offset(p: Point, line_from: Point, line_to: Point) -> Tuple[float, float]:
    """
    Signed distance from p to the directed line line_from->line_to
    (positive on the left) and the length of the segment.

    The direction is normalised before any product is formed, so the
    result neither overflows nor underflows for representable coordinates.
    """
    dx, dy = line_to.x - line_from.x, line_to.y - line_from.y
    length = math.hypot(dx, dy)
    if length == 0:
        raise DomainError("line endpoints must be distinct")
    ux, uy = dx / length, dy / length
    return ux * (p.y - line_from.y) - uy * (p.x - line_from.x), length


def project_onto_line(p: Point, a: Point, b: Point) -> Point:
    """Orthogonal projection of p onto the line through a and b."""
    dx, dy = b.x - a.x, b.y - a.y
    length = math.hypot(dx, dy)
    if length == 0:
        raise DomainError("cannot project onto a degenerate line")
    ux, uy = dx / length, dy / length
    t = (p.x - a.x) * ux + (p.y - a.y) * uy
    return Point(a.x + t * ux, a.y + t * uy)


def build_triangle(a: float, b: float) -> RightTriangle:
    """
    Build the canonical right triangle with legs a (CB) and b (AC).

    Args:
        a: Length of leg CB
        b: Length of leg AC

    Returns:
        RightTriangle: C at the origin, B on the x axis, A on the y axis
    """
    for name, value in (("a", a), ("b", b)):
        if value is None or isinstance(value, bool):
            raise DomainError(f"legs must be positive finite numbers, got {name}={value!r}")
        if not math.isfinite(value) or value <= 0:
            raise DomainError(f"legs must be positive: a={a}, b={b}")

    a, b = float(a), float(b)
    A, B, C = Point(0.0, b), Point(a, 0.0), Point(0.0, 0.0)
    c = distance(A, B)
    if a > b:
        logger.debug("Legs given with a > b (a=%s, b=%s); accepted as is", a, b)
    return RightTriangle(a=a, b=b, c=c, A=A, B=B, C=C)


def construct_scene(tri: RightTriangle) -> ConstructionScene:
    """
    Construct circles D, E, F and the points G, H, J for a triangle.

    G is the orthogonal projection of C onto AB rather than the second
    intersection of circles E and F, which would require choosing between
    the roots C and G. Its coordinates use the closed form
    (ab^2/c^2, a^2b/c^2) with the legs divided by c before squaring:
    projecting numerically loses the small coordinate when the legs differ
    by orders of magnitude, and squaring first leaves the float range for
    very small or very large legs.
    """
    A, B, C = tri.A, tri.B, tri.C
    D, E, F = midpoint(A, B), midpoint(A, C), midpoint(C, B)

    a, b, c = tri.a, tri.b, tri.c
    G = Point(a * (b / c) ** 2, b * (a / c) ** 2)
    H = Point(0.0, G.y)
    J = Point(G.x, 0.0)

    scene = ConstructionScene(
        tri=tri,
        D=D,
        E=E,
        F=F,
        circleD=CircleSpec(D, tri.c / 2),
        circleE=CircleSpec(E, tri.b / 2),
        circleF=CircleSpec(F, tri.a / 2),
        G=G,
        H=H,
        J=J,
        theta_deg=measure_angle(A, C, B),
    )
    logger.debug("Constructed scene for legs (%s, %s): G=(%r, %r), theta=%r deg",
                 tri.a, tri.b, G.x, G.y, scene.theta_deg)
    return scene


def measure_angle(vertex: Point, ray1: Point, ray2: Point) -> float:
    """
    Unsigned angle in degrees between the rays vertex->ray1 and vertex->ray2.

    Raises:
        DomainError: If a ray endpoint coincides with the vertex
    """
    ux, uy = ray1.x - vertex.x, ray1.y - vertex.y
    vx, vy = ray2.x - vertex.x, ray2.y - vertex.y
    u_len, v_len = math.hypot(ux, uy), math.hypot(vx, vy)
    if u_len == 0 or v_len == 0:
        raise DomainError("ray endpoint coincides with the angle vertex")
    ux, uy, vx, vy = ux / u_len, uy / u_len, vx / v_len, vy / v_len
    cross = ux * vy - uy * vx
    dot = ux * vx + uy * vy
    return math.degrees(math.atan2(abs(cross), dot))


def chord_side(p: Point, chord_from: Point, chord_to: Point, tol: float = DEFAULT_TOLERANCE) -> int:
    """
    Side of the directed chord line on which p lies.

    Returns +1 left of chord_from->chord_to, -1 right of it, and 0 when the
    distance from p to the line is within tol times the chord length.
    region_model.region_mask applies the same rule to sample arrays.
    """
    offset, length = signed_offset(p, chord_from, chord_to)
    if abs(offset) <= tol * length:
        return 0
    return 1 if offset > 0 else -1


def line_distance(p: Point, line_from: Point, line_to: Point) -> float:
    """Distance from p to the infinite line through two distinct points."""
    return abs(signed_offset(p, line_from, line_to)[0])


def scene_residuals(scene: ConstructionScene) -> Dict[str, float]:
    """
    Measure every ConstructionScene invariant.

    Returns:
        dict: invariant name -> residual (relative where the reference is
        a nonzero length, absolute otherwise); all should be below tolerance
    """
    tri = scene.tri
    A, B, C, G = tri.A, tri.B, tri.C, scene.G
    c = tri.c

    # unit direction of AB; lengths are divided out before multiplying
    ux, uy = (B.x - A.x) / c, (B.y - A.y) / c
    # position of G along AB as a fraction of |AB|
    t = ((G.x - A.x) * ux + (G.y - A.y) * uy) / c
    cg = distance(C, G)
    perp = abs((G.x - C.x) / cg * ux + (G.y - C.y) / cg * uy)

    return {
        "D_midpoint_AB": distance(scene.D, midpoint(A, B)) / c,
        "E_midpoint_AC": distance(scene.E, midpoint(A, C)) / tri.b,
        "F_midpoint_CB": distance(scene.F, midpoint(C, B)) / tri.a,
        "G_on_line_AB": line_distance(G, A, B) / c,
        "G_projection_of_C": distance(G, project_onto_line(C, A, B)) / c,
        "G_within_segment_AB": max(0.0, -t, t - 1.0),
        "CG_perpendicular_AB": perp,
        "G_on_circle_E": relative_error(distance(scene.E, G), tri.b / 2),
        "G_on_circle_F": relative_error(distance(scene.F, G), tri.a / 2),
        "H_projection": distance(scene.H, Point(0.0, G.y)),
        "J_projection": distance(scene.J, Point(G.x, 0.0)),
        "theta_range": 0.0 if 0.0 < scene.theta_deg < 90.0 else 1.0,
    }


def triangle_notes(tri: RightTriangle, tol: float = DEFAULT_TOLERANCE) -> List[str]:
    """Informational notes about a triangle that do not affect verification."""
    notes = []
    if tri.a > tri.b:
        notes.append(
            f"legs given with a > b (a={tri.a!r}, b={tri.b!r}); the construction assumes "
            "a <= b but no formula used here depends on it"
        )
    if within_tolerance(tri.a, tri.b, tol):
        notes.append("isosceles triangle: G coincides with D, the midpoint of AB")
    return notes


if __name__ == "__main__":
    logging.basicConfig(level=logging.DEBUG)
    demo = construct_scene(build_triangle(3, 4))
    print(f"G = ({demo.G.x:.6f}, {demo.G.y:.6f}), theta = {demo.theta_deg:.6f} deg")
    for name, residual in scene_residuals(demo).items():
        print(f"  {name}: {residual:.3e}")
