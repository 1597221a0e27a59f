"""2D vector and polygon primitives plus ray-boundary intersection.

Everything here is pure and operates on immutable values. Predicates are
epsilon-based: EPS_HIT is the minimum advance along a ray before a boundary
counts as hit, and doubles as the "on boundary" tolerance for containment
queries. Scenes are meter-scale, so 1e-9 sits far below feature size and
far above double-precision noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional

from .errors import DegenerateVector

EPS_HIT = 1e-9
# Two directions with |cross| below this are treated as parallel.
EPS_PARALLEL = 1e-12


@dataclass(frozen=True)
class Vec2:
    x: float
    y: float

    def __add__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x + other.x, self.y + other.y)

    def __sub__(self, other: "Vec2") -> "Vec2":
        return Vec2(self.x - other.x, self.y - other.y)

    def __neg__(self) -> "Vec2":
        return Vec2(-self.x, -self.y)

    def scale(self, s: float) -> "Vec2":
        return Vec2(self.x * s, self.y * s)

    def dot(self, other: "Vec2") -> float:
        return self.x * other.x + self.y * other.y

    def cross(self, other: "Vec2") -> float:
        return self.x * other.y - self.y * other.x

    def norm(self) -> float:
        return math.hypot(self.x, self.y)

    def perp(self) -> "Vec2":
        """+90 degree rotation."""
        return Vec2(-self.y, self.x)

    def rotated(self, angle: float) -> "Vec2":
        c, s = math.cos(angle), math.sin(angle)
        return Vec2(self.x * c - self.y * s, self.x * s + self.y * c)

    def angle(self) -> float:
        return math.atan2(self.y, self.x)

    @staticmethod
    def from_angle(angle: float) -> "Vec2":
        return Vec2(math.cos(angle), math.sin(angle))


def normalize(v: Vec2) -> Vec2:
    """Unit vector along v. Raises DegenerateVector when |v| <= 1e-12."""
    n = v.norm()
    if n <= 1e-12:
        raise DegenerateVector(f"cannot normalize near-zero vector ({v.x}, {v.y})")
    if abs(n - 1.0) < 1e-14:
        return v  # already unit to rounding; keeps normalization exactly idempotent
    return Vec2(v.x / n, v.y / n)


@dataclass(frozen=True)
class Pose:
    """Position plus rotation; rotation is normalized to [0, 2*pi)."""

    position: Vec2
    rotation: float

    def __post_init__(self):
        two_pi = 2.0 * math.pi
        rot = self.rotation % two_pi
        if rot >= two_pi or rot < 0.0:  # float mod can round up to 2*pi exactly
            rot = 0.0
        object.__setattr__(self, "rotation", rot)


IDENTITY_POSE = Pose(Vec2(0.0, 0.0), 0.0)


@dataclass(frozen=True)
class Polygon:
    """Simple polygon, vertices in counter-clockwise order (local coordinates)."""

    vertices: tuple[Vec2, ...]

    def __init__(self, vertices):
        object.__setattr__(self, "vertices", tuple(vertices))

    def edges(self):
        """Yield (a, b) vertex pairs for each edge, last closing to first."""
        vs = self.vertices
        for i in range(len(vs)):
            yield vs[i], vs[(i + 1) % len(vs)]

    def signed_area(self) -> float:
        acc = 0.0
        for a, b in self.edges():
            acc += a.cross(b)
        return 0.5 * acc

    def violations(self) -> list[str]:
        """Structural problems, empty when the polygon is valid.

        CW input is rejected (not silently reversed) so edge-normal
        orientation stays unambiguous downstream.
        """
        out: list[str] = []
        vs = self.vertices
        if len(vs) < 3:
            out.append(f"polygon has {len(vs)} vertices, need at least 3")
            return out
        area = self.signed_area()
        if abs(area) <= EPS_HIT:
            out.append("polygon has (near-)zero area")
        elif area < 0.0:
            out.append("polygon winding is clockwise, expected counter-clockwise")
        if _self_intersects(vs):
            out.append("polygon is self-intersecting")
        return out


def apply_pose(pose: Pose, poly: Polygon) -> Polygon:
    """Rotate every vertex by pose.rotation about the origin, then translate."""
    return Polygon(v.rotated(pose.rotation) + pose.position for v in poly.vertices)


@dataclass(frozen=True)
class Hit:
    t: float
    point: Vec2


def intersect_ray_segment(origin: Vec2, direction: Vec2, a: Vec2, b: Vec2) -> Optional[Hit]:
    """First intersection of ray origin + t*direction (t > EPS_HIT) with segment [a, b].

    Returns None for misses, hits behind the origin, and rays parallel to
    the segment (collinear overlap included: the degenerate along-surface
    case is not a usable hit).
    """
    e = b - a
    elen = e.norm()
    if elen <= EPS_HIT:
        return None
    denom = direction.cross(e)
    if abs(denom) / elen < EPS_PARALLEL:
        return None
    ao = a - origin
    t = ao.cross(e) / denom
    u = ao.cross(direction) / denom
    # u is the fraction along [a, b]; allow EPS_HIT of slack in scene units
    # so rays through a shared vertex register on both adjoining edges.
    slack = EPS_HIT / elen
    if t <= EPS_HIT or u < -slack or u > 1.0 + slack:
        return None
    return Hit(t, origin + direction.scale(t))


class Containment(Enum):
    OUTSIDE = 0
    INSIDE = 1
    BOUNDARY = 2


def point_segment_distance(p: Vec2, a: Vec2, b: Vec2) -> float:
    e = b - a
    ee = e.dot(e)
    if ee == 0.0:
        return (p - a).norm()
    s = (p - a).dot(e) / ee
    s = min(1.0, max(0.0, s))
    return (p - (a + e.scale(s))).norm()


def point_in_polygon(p: Vec2, poly: Polygon) -> Containment:
    """Strict containment with an explicit BOUNDARY outcome.

    Points within EPS_HIT of any edge report BOUNDARY; callers that need a
    medium there must epsilon-offset and ask again, never guess a side.
    """
    for a, b in poly.edges():
        if point_segment_distance(p, a, b) < EPS_HIT:
            return Containment.BOUNDARY
    # Even-odd crossing test with half-open edges; safe here because
    # boundary-proximal points were already filtered out.
    inside = False
    for a, b in poly.edges():
        if (a.y > p.y) != (b.y > p.y):
            x_cross = a.x + (p.y - a.y) * (b.x - a.x) / (b.y - a.y)
            if p.x < x_cross:
                inside = not inside
    return Containment.INSIDE if inside else Containment.OUTSIDE


def polygon_interior_point(poly: Polygon) -> Vec2:
    """A point strictly inside the polygon (vertex mean for convex shapes,
    ear midpoint fallback otherwise)."""
    vs = poly.vertices
    c = Vec2(sum(v.x for v in vs) / len(vs), sum(v.y for v in vs) / len(vs))
    if point_in_polygon(c, poly) is Containment.INSIDE:
        return c
    n = len(vs)
    for i in range(n):
        a, b, c3 = vs[i], vs[(i + 1) % n], vs[(i + 2) % n]
        mid = Vec2((a.x + b.x + c3.x) / 3.0, (a.y + b.y + c3.y) / 3.0)
        if point_in_polygon(mid, poly) is Containment.INSIDE:
            return mid
    raise ValueError("no interior point found; polygon is degenerate")


def _segments_cross(a1: Vec2, a2: Vec2, b1: Vec2, b2: Vec2) -> bool:
    """Proper crossing test (shared endpoints do not count)."""
    d1 = (a2 - a1).cross(b1 - a1)
    d2 = (a2 - a1).cross(b2 - a1)
    d3 = (b2 - b1).cross(a1 - b1)
    d4 = (b2 - b1).cross(a2 - b1)
    return ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0))


def _self_intersects(vs: tuple[Vec2, ...]) -> bool:
    n = len(vs)
    for i in range(n):
        a1, a2 = vs[i], vs[(i + 1) % n]
        for j in range(i + 1, n):
            if j == i or (j + 1) % n == i or (i + 1) % n == j:
                continue  # adjacent edges share a vertex by construction
            b1, b2 = vs[j], vs[(j + 1) % n]
            if _segments_cross(a1, a2, b1, b2):
                return True
    return False
