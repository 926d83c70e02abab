"""
Named quantities of the construction: angle ledger, altitude lengths, the six
circular segments (regions RA..RF), the three semicircles and the reference
triangles.

Regions RA..RF are the construction's Regions A..F, renamed so they do not
collide with the points/circles D, E and F:

    RA  segment of circle D cut by chord AC (away from B)
    RB  segment of circle D cut by chord CB (away from A)
    RC  segment of circle E cut by chord AG (away from C)
    RD  segment of circle E cut by chord CG (away from A)
    RE  segment of circle F cut by chord CG (away from B)
    RF  segment of circle F cut by chord GB (away from C)
    SA  half of circle F on chord CB, on the side of G
    SB  half of circle E on chord AC, on the side of G
    SC  half of circle D on chord AB, on the side of C

Closed forms keep the degree convention for sector fractions and are
evaluated with mpmath at WORK_DPS digits, then rounded to float once.
"""

import logging
import math
import sys
from dataclasses import dataclass
from enum import Enum
from typing import Dict, Tuple

import mpmath as mp
import numpy as np

from errors import DomainError, VerificationError
from geometry_core import (
    DEFAULT_TOLERANCE,
    CircleSpec,
    ConstructionScene,
    Point,
    RightTriangle,
    chord_side,
    distance,
    measure_angle,
    midpoint,
)

logger = logging.getLogger(__name__)

WORK_DPS = 50


class RegionId(str, Enum):
    RA = "RA"
    RB = "RB"
    RC = "RC"
    RD = "RD"
    RE = "RE"
    RF = "RF"
    SA = "SA"
    SB = "SB"
    SC = "SC"
    TRI_ABC = "TRI_ABC"
    TRI_AGC = "TRI_AGC"
    TRI_CGB = "TRI_CGB"

    @classmethod
    def parse(cls, text: str) -> "RegionId":
        try:
            return cls(text.strip().upper())
        except ValueError:
            raise DomainError(f"unknown region id {text!r}; expected one of "
                              f"{', '.join(r.value for r in cls)}") from None


SEGMENT_IDS = (RegionId.RA, RegionId.RB, RegionId.RC, RegionId.RD, RegionId.RE, RegionId.RF)
SEMICIRCLE_IDS = (RegionId.SA, RegionId.SB, RegionId.SC)
TRIANGLE_IDS = (RegionId.TRI_ABC, RegionId.TRI_AGC, RegionId.TRI_CGB)
CHORD_REGION_IDS = SEGMENT_IDS + SEMICIRCLE_IDS


@dataclass(frozen=True)
class AngleLedger:
    theta: float
    angle_EAG: float
    angle_EGA: float
    angle_CBG: float
    angle_FBG: float
    angle_FGB: float
    angle_BFG: float
    angle_CFG: float
    angle_AEG: float
    angle_CEG: float

    def as_dict(self) -> Dict[str, float]:
        return dict(self.__dict__)


@dataclass(frozen=True)
class AltitudeLengths:
    GH: float
    GJ: float


@dataclass(frozen=True)
class SimilarLengths:
    AG: float
    CG: float
    BG: float


@dataclass(frozen=True)
class AltTriangleAreas:
    AEG: float
    CEG: float
    CFG: float
    GFB: float


@dataclass(frozen=True)
class LemmaDiscrepancy:
    claimed: float
    actual: float

    @property
    def difference(self) -> float:
        return self.claimed - self.actual


@dataclass(frozen=True)
class RegionSpec:
    """
    A region bounded by a chord and the arc of a disk.

    Membership is strict: inside the open disk and strictly on the
    witness's side of the chord line. `frame` is the enclosing disk D.
    """

    id: RegionId
    disk: CircleSpec
    chord_from: Point
    chord_to: Point
    interior_witness: Point
    frame: CircleSpec

    @property
    def side(self) -> int:
        return chord_side(self.interior_witness, self.chord_from, self.chord_to)

    def contains(self, p: Point) -> bool:
        return bool(region_mask(self, np.array([p.x]), np.array([p.y]))[0])


def region_mask(spec: RegionSpec, xs: np.ndarray, ys: np.ndarray,
                tol: float = DEFAULT_TOLERANCE) -> np.ndarray:
    """
    Vectorised strict membership of sample points in a region.

    A point belongs when it is inside the open disk and chord_side would
    place it on the witness's side: farther than tol times the chord
    length from the chord line.
    """
    side = spec.side
    if side == 0:
        return np.zeros(np.shape(xs), dtype=bool)
    cx, cy, r = spec.disk.center.x, spec.disk.center.y, spec.disk.radius
    fx, fy = spec.chord_from.x, spec.chord_from.y
    length = distance(spec.chord_from, spec.chord_to)
    ux, uy = (spec.chord_to.x - fx) / length, (spec.chord_to.y - fy) / length

    inside = np.hypot(xs - cx, ys - cy) < r
    offsets = ux * (ys - fy) - uy * (xs - fx)
    return inside & (side * offsets > tol * length)


# ---------------------------------------------------------------------------
# Angles and lengths
# ---------------------------------------------------------------------------

def _closed_form_ledger(theta: float) -> AngleLedger:
    return AngleLedger(
        theta=theta,
        angle_EAG=theta,
        angle_EGA=theta,
        angle_CBG=90.0 - theta,
        angle_FBG=90.0 - theta,
        angle_FGB=90.0 - theta,
        angle_BFG=2.0 * theta,
        angle_CFG=180.0 - 2.0 * theta,
        angle_AEG=180.0 - 2.0 * theta,
        angle_CEG=2.0 * theta,
    )


def measured_angle_ledger(scene: ConstructionScene) -> AngleLedger:
    """Every ledger entry measured directly from the scene coordinates."""
    A, B, C = scene.tri.A, scene.tri.B, scene.tri.C
    E, F, G = scene.E, scene.F, scene.G
    return AngleLedger(
        theta=measure_angle(A, C, B),
        angle_EAG=measure_angle(A, E, G),
        angle_EGA=measure_angle(G, E, A),
        angle_CBG=measure_angle(B, C, G),
        angle_FBG=measure_angle(B, F, G),
        angle_FGB=measure_angle(G, F, B),
        angle_BFG=measure_angle(F, B, G),
        angle_CFG=measure_angle(F, C, G),
        angle_AEG=measure_angle(E, A, G),
        angle_CEG=measure_angle(E, C, G),
    )


def ledger_deviations(expected: AngleLedger, measured: AngleLedger) -> Dict[str, float]:
    """Absolute deviation in degrees per ledger entry."""
    measured_values = measured.as_dict()
    return {name: abs(value - measured_values[name]) for name, value in expected.as_dict().items()}


def angle_ledger(scene: ConstructionScene, validate: bool = True,
                 tol: float = DEFAULT_TOLERANCE) -> AngleLedger:
    """
    Angle ledger populated from theta by the closed forms.

    Args:
        scene: Construction scene
        validate: Recompute every entry with measure_angle and compare
        tol: Allowed absolute deviation in degrees

    Returns:
        AngleLedger: closed-form angles in degrees

    Raises:
        VerificationError: If a measured angle deviates beyond tol
    """
    ledger = _closed_form_ledger(scene.theta_deg)
    if validate:
        deviations = ledger_deviations(ledger, measured_angle_ledger(scene))
        worst = max(deviations, key=deviations.get)
        if deviations[worst] > tol:
            raise VerificationError(
                f"{worst} deviates from its closed form by {deviations[worst]:.3e} deg (tol {tol:.1e})"
            )
    return ledger


def altitude_lengths(tri: RightTriangle) -> AltitudeLengths:
    """GH = ab^2/c^2 and GJ = a^2b/c^2, the horizontal/vertical offsets of G."""
    a, b, c = tri.a, tri.b, tri.c
    return AltitudeLengths(GH=a * (b / c) ** 2, GJ=b * (a / c) ** 2)


def similar_lengths(tri: RightTriangle) -> SimilarLengths:
    """Hypotenuse pieces from the similarity AGC ~ ACB ~ CGB."""
    a, b, c = tri.a, tri.b, tri.c
    return SimilarLengths(AG=b * (b / c), CG=a * (b / c), BG=a * (a / c))


def alt_triangle_areas(tri: RightTriangle) -> AltTriangleAreas:
    """
    Areas of AEG, CEG, CFG and GFB without trigonometry: each is half of
    AGC or CGB, with legs taken from the similar-triangle lengths.
    """
    with mp.workdps(WORK_DPS):
        a, b = mp.mpf(tri.a), mp.mpf(tri.b)
        c = mp.sqrt(a * a + b * b)
        AG, CG, BG = b * b / c, a * b / c, a * a / c
        half_agc = (AG * CG / 2) / 2
        half_cgb = (CG * BG / 2) / 2
        return AltTriangleAreas(
            AEG=float(half_agc),
            CEG=float(half_agc),
            CFG=float(half_cgb),
            GFB=float(half_cgb),
        )


def altitude_triangle_areas(tri: RightTriangle) -> AltTriangleAreas:
    """The same four areas built from the altitudes: (1/2)·GH·(b/2) and (1/2)·GJ·(a/2)."""
    with mp.workdps(WORK_DPS):
        a, b = mp.mpf(tri.a), mp.mpf(tri.b)
        c2 = a * a + b * b
        GH, GJ = a * b * b / c2, a * a * b / c2
        from_e = GH * (b / 2) / 2
        from_f = GJ * (a / 2) / 2
        return AltTriangleAreas(AEG=float(from_e), CEG=float(from_e), CFG=float(from_f), GFB=float(from_f))


# ---------------------------------------------------------------------------
# Regions
# ---------------------------------------------------------------------------

# id -> (disk, chord_from, chord_to, reference point, keep the reference side?)
_REGION_TABLE = {
    RegionId.RA: ("D", "A", "C", "B", False),
    RegionId.RB: ("D", "C", "B", "A", False),
    RegionId.RC: ("E", "A", "G", "C", False),
    RegionId.RD: ("E", "C", "G", "A", False),
    RegionId.RE: ("F", "C", "G", "B", False),
    RegionId.RF: ("F", "G", "B", "C", False),
    RegionId.SA: ("F", "C", "B", "G", True),
    RegionId.SB: ("E", "A", "C", "G", True),
    RegionId.SC: ("D", "A", "B", "C", True),
}


def _scene_point(scene: ConstructionScene, name: str) -> Point:
    if name in ("A", "B", "C"):
        return getattr(scene.tri, name)
    return getattr(scene, name)


def _segment_witness(disk: CircleSpec, chord_from: Point, chord_to: Point, side: int) -> Point:
    # halfway between the chord midpoint and the arc apex on the requested side
    dx, dy = chord_to.x - chord_from.x, chord_to.y - chord_from.y
    length = math.hypot(dx, dy)
    nx, ny = -dy / length * side, dx / length * side
    apex = Point(disk.center.x + disk.radius * nx, disk.center.y + disk.radius * ny)
    return midpoint(midpoint(chord_from, chord_to), apex)


def region_spec(region: RegionId, scene: ConstructionScene) -> RegionSpec:
    """
    Chord/disk/side description of a segment or semicircle region.

    Raises:
        DomainError: For the reference triangles, which are not chord regions
    """
    region = RegionId(region)
    if region not in _REGION_TABLE:
        raise DomainError(f"{region.value} is a triangle, not a chord-segment region")

    disk_name, from_name, to_name, ref_name, keep_side = _REGION_TABLE[region]
    disk = getattr(scene, "circle" + disk_name)
    chord_from, chord_to = _scene_point(scene, from_name), _scene_point(scene, to_name)

    ref_side = chord_side(_scene_point(scene, ref_name), chord_from, chord_to)
    if ref_side == 0:
        raise DomainError(f"reference point {ref_name} lies on chord {from_name}{to_name}")
    side = ref_side if keep_side else -ref_side

    spec = RegionSpec(
        id=region,
        disk=disk,
        chord_from=chord_from,
        chord_to=chord_to,
        interior_witness=_segment_witness(disk, chord_from, chord_to, side),
        frame=scene.circleD,
    )
    if not spec.contains(spec.interior_witness):
        raise VerificationError(f"interior witness of {region.value} is not inside its region")
    return spec


def region_area(region: RegionId, tri: RightTriangle) -> float:
    """
    Closed-form area of a region, theta in degrees.

    Args:
        region: Any RegionId, including the reference triangles
        tri: Right triangle

    Returns:
        float: Area, never negative
    """
    region = RegionId(region)
    with mp.workdps(WORK_DPS):
        a, b = mp.mpf(tri.a), mp.mpf(tri.b)
        c2 = a * a + b * b
        theta = mp.degrees(mp.atan2(a, b))
        major = (180 - 2 * theta) / 360
        minor = (2 * theta) / 360

        disk_c, disk_b, disk_a = mp.pi * c2 / 4, mp.pi * b * b / 4, mp.pi * a * a / 4
        tri_e = a * b ** 3 / (4 * c2)
        tri_f = a ** 3 * b / (4 * c2)

        formulas = {
            RegionId.RA: lambda: disk_c * major - a * b / 4,
            RegionId.RB: lambda: disk_c * minor - a * b / 4,
            RegionId.RC: lambda: disk_b * major - tri_e,
            RegionId.RD: lambda: disk_b * minor - tri_e,
            RegionId.RE: lambda: disk_a * major - tri_f,
            RegionId.RF: lambda: disk_a * minor - tri_f,
            RegionId.SA: lambda: mp.pi * a * a / 8,
            RegionId.SB: lambda: mp.pi * b * b / 8,
            RegionId.SC: lambda: mp.pi * c2 / 8,
            RegionId.TRI_ABC: lambda: a * b / 2,
            RegionId.TRI_AGC: lambda: 2 * tri_e,
            RegionId.TRI_CGB: lambda: 2 * tri_f,
        }
        value = formulas[region]()
        return max(float(value), 0.0)


def check_area_range(tri: RightTriangle) -> None:
    """
    Raise DomainError when areas of the size c^2 cannot be held in a
    normal float. Lengths stay usable well beyond this range.
    """
    c2 = tri.c * tri.c
    if not (sys.float_info.min <= c2 < math.inf):
        raise DomainError(
            f"legs a={tri.a!r}, b={tri.b!r} give areas of order c^2 = {tri.c!r}^2 "
            "outside the floating-point range"
        )


def all_region_areas(tri: RightTriangle) -> Dict[RegionId, float]:
    return {region: region_area(region, tri) for region in RegionId}


def lemma_region_a_check(tri: RightTriangle) -> LemmaDiscrepancy:
    """
    Evaluate the literal "Region A congruence" claim, RA = RC + RD - [AGC].

    The claim does not hold as stated (3-4-5 gives -1.396815 against
    2.795595); the partition identities are what the verifier checks.
    """
    claimed = (region_area(RegionId.RC, tri) + region_area(RegionId.RD, tri)
               - region_area(RegionId.TRI_AGC, tri))
    return LemmaDiscrepancy(claimed=claimed, actual=region_area(RegionId.RA, tri))


def partition_identities(tri: RightTriangle) -> Dict[str, Tuple[float, float]]:
    """name -> (semicircle area, triangle + segment pair)."""
    area = all_region_areas(tri)
    R = RegionId
    return {
        "SB=AGC+RC+RD": (area[R.SB], area[R.TRI_AGC] + area[R.RC] + area[R.RD]),
        "SA=CGB+RE+RF": (area[R.SA], area[R.TRI_CGB] + area[R.RE] + area[R.RF]),
        "SC=ABC+RA+RB": (area[R.SC], area[R.TRI_ABC] + area[R.RA] + area[R.RB]),
    }


def pair_sum_identities(tri: RightTriangle) -> Dict[str, Tuple[float, float]]:
    """name -> (segment pair sum, angle-free closed form)."""
    area = all_region_areas(tri)
    R = RegionId
    with mp.workdps(WORK_DPS):
        a, b = mp.mpf(tri.a), mp.mpf(tri.b)
        c2 = a * a + b * b
        expected_d = float(mp.pi * c2 / 8 - a * b / 2)
        expected_e = float(mp.pi * b * b / 8 - a * b ** 3 / (2 * c2))
        expected_f = float(mp.pi * a * a / 8 - a ** 3 * b / (2 * c2))
    return {
        "RA+RB": (area[R.RA] + area[R.RB], expected_d),
        "RC+RD": (area[R.RC] + area[R.RD], expected_e),
        "RE+RF": (area[R.RE] + area[R.RF], expected_f),
    }


def decomposition_total(tri: RightTriangle) -> float:
    """SA + SB + RA + RB - RC - RD - RE - RF from the closed forms."""
    area = all_region_areas(tri)
    R = RegionId
    return (area[R.SA] + area[R.SB] + area[R.RA] + area[R.RB]
            - area[R.RC] - area[R.RD] - area[R.RE] - area[R.RF])


if __name__ == "__main__":
    from geometry_core import build_triangle, construct_scene

    demo_tri = build_triangle(3, 4)
    demo_scene = construct_scene(demo_tri)
    for region_id, value in all_region_areas(demo_tri).items():
        print(f"{region_id.value:8s} {value:.6f}")
    print(angle_ledger(demo_scene))
