"""Scene documents: media table, posed polygonal elements, sources, bounds.

Documents are immutable values; every edit (set_pose) is copy-on-write and
re-validated. Medium lookup at a point uses strict nesting: the effective
medium is the innermost (smallest-area) element containing the point, the
background otherwise. Boundary-side media are never guessed: a point on an
edge raises OnBoundary and callers epsilon-offset.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Union

from .errors import OnBoundary, PoseRejected, UnknownId
from .geometry import (
    EPS_HIT,
    Containment,
    Polygon,
    Pose,
    Vec2,
    apply_pose,
    point_in_polygon,
    polygon_interior_point,
    _segments_cross,
)
from .optics import WAVELENGTH_MAX_NM, WAVELENGTH_MIN_NM, WHITE_TABLE_NM, Medium

# Side-sampling offset for resolving media on each side of a hit.
EPS_SIDE = 10.0 * EPS_HIT
# Edges closer than this but not exactly coincident are flagged by the
# validator: they would make boundary-side resolution epsilon-ambiguous.
EPS_NEAR_EDGE = 1e-6

FAN_SPREAD_MAX = math.pi / 4.0
FAN_COUNT_MAX = 64


@dataclass(frozen=True)
class SingleRay:
    pass


@dataclass(frozen=True)
class Fan:
    count: int
    spread_rad: float


Beam = Union[SingleRay, Fan]


@dataclass(frozen=True)
class Mono:
    lambda_nm: float


@dataclass(frozen=True)
class White:
    pass


Spectrum = Union[Mono, White]


@dataclass(frozen=True)
class Element:
    id: str
    shape: Polygon  # local coordinates
    medium: str
    pose: Pose

    def world_shape(self) -> Polygon:
        return apply_pose(self.pose, self.shape)


@dataclass(frozen=True)
class Source:
    """Flashlight: position is the emitter point, rotation the beam heading."""

    id: str
    pose: Pose
    beam: Beam
    spectrum: Spectrum


@dataclass(frozen=True)
class Bounds:
    x_min: float
    y_min: float
    x_max: float
    y_max: float

    def contains(self, p: Vec2) -> bool:
        return self.x_min < p.x < self.x_max and self.y_min < p.y < self.y_max

    def corners(self) -> tuple[Vec2, Vec2, Vec2, Vec2]:
        return (
            Vec2(self.x_min, self.y_min),
            Vec2(self.x_max, self.y_min),
            Vec2(self.x_max, self.y_max),
            Vec2(self.x_min, self.y_max),
        )

    def edges(self):
        cs = self.corners()
        for i in range(4):
            yield cs[i], cs[(i + 1) % 4]


@dataclass(frozen=True)
class SceneDoc:
    background: str
    media: tuple[Medium, ...]
    elements: tuple[Element, ...]
    sources: tuple[Source, ...]
    bounds: Bounds

    def media_table(self) -> dict[str, Medium]:
        return {m.name: m for m in self.media}

    def medium_named(self, name: str) -> Medium:
        for m in self.media:
            if m.name == name:
                return m
        raise UnknownId(f"no medium named '{name}'")


@dataclass(frozen=True)
class Violation:
    kind: str
    ids: tuple[str, ...]
    message: str

    def __str__(self) -> str:
        return f"{self.kind}({', '.join(self.ids)}): {self.message}"


def _overlap_class(pa: Polygon, pb: Polygon) -> str:
    """'disjoint', 'nested', or 'partial' for two world-space polygons.

    Touching boundaries are fine as long as no edge pair crosses properly;
    beyond that, vertex containment decides (boundary contacts are neutral).
    """
    for a1, a2 in pa.edges():
        for b1, b2 in pb.edges():
            if _segments_cross(a1, a2, b1, b2):
                return "partial"

    def split(p: Polygon, other: Polygon) -> tuple[int, int]:
        ins = outs = 0
        for v in p.vertices:
            c = point_in_polygon(v, other)
            if c is Containment.INSIDE:
                ins += 1
            elif c is Containment.OUTSIDE:
                outs += 1
        return ins, outs

    a_in, a_out = split(pa, pb)
    b_in, b_out = split(pb, pa)
    if (a_in and a_out) or (b_in and b_out) or (a_in and b_in):
        return "partial"
    if a_in or b_in:
        return "nested"
    if a_out or b_out:
        return "disjoint"
    # Every vertex of each lies on the other's boundary (e.g. an inscribed
    # diamond): fall back to interior sampling.
    a_int_in = point_in_polygon(polygon_interior_point(pa), pb) is Containment.INSIDE
    b_int_in = point_in_polygon(polygon_interior_point(pb), pa) is Containment.INSIDE
    if a_int_in != b_int_in:
        return "nested"
    return "partial"


def _edges_near_but_not_coincident(pa: Polygon, pb: Polygon) -> bool:
    """True when some edge pair is nearly parallel and nearly overlapping
    without being exactly collinear (within EPS_HIT)."""
    for a1, a2 in pa.edges():
        ea = a2 - a1
        la = ea.norm()
        for b1, b2 in pb.edges():
            eb = b2 - b1
            lb = eb.norm()
            if la == 0.0 or lb == 0.0:
                continue
            sin_between = abs(ea.cross(eb)) / (la * lb)
            if sin_between > 1e-6:
                continue  # not parallel
            # Perpendicular offsets of b's endpoints from line(a).
            d1 = abs(ea.cross(b1 - a1)) / la
            d2 = abs(ea.cross(b2 - a1)) / la
            off = max(d1, d2)
            if off <= EPS_HIT or off >= EPS_NEAR_EDGE:
                continue  # exact overlap is legal; far apart is uninteresting
            # Flag only if the segments actually overlap along the line.
            t1 = (b1 - a1).dot(ea) / (la * la)
            t2 = (b2 - a1).dot(ea) / (la * la)
            if max(min(t1, t2), 0.0) < min(max(t1, t2), 1.0):
                return True
    return False


def validate(scene: SceneDoc) -> list[Violation]:
    """Every violated invariant, with the ids involved. Empty means ok."""
    out: list[Violation] = []
    names = [m.name for m in scene.media]
    for name in set(names):
        if names.count(name) > 1:
            out.append(Violation("DuplicateMedium", (name,), f"medium '{name}' defined more than once"))
    table = scene.media_table()
    for m in scene.media:
        for msg in m.violations():
            out.append(Violation("BadMedium", (m.name,), msg))
    if scene.background not in table:
        out.append(Violation("UnknownMedium", (scene.background,), f"background medium '{scene.background}' not in media table"))

    ids = [e.id for e in scene.elements] + [s.id for s in scene.sources]
    for i in set(ids):
        if ids.count(i) > 1:
            out.append(Violation("DuplicateId", (i,), f"id '{i}' used more than once"))

    world: dict[str, Polygon] = {}
    for el in scene.elements:
        for msg in el.shape.violations():
            out.append(Violation("BadPolygon", (el.id,), msg))
        if el.medium not in table:
            out.append(Violation("UnknownMedium", (el.id,), f"element '{el.id}' references unknown medium '{el.medium}'"))
        if not el.shape.violations():
            world[el.id] = el.world_shape()

    els = [e for e in scene.elements if e.id in world]
    for i in range(len(els)):
        for j in range(i + 1, len(els)):
            a, b = els[i], els[j]
            cls = _overlap_class(world[a.id], world[b.id])
            if cls == "partial":
                out.append(Violation("PartialOverlap", (a.id, b.id), "elements overlap without nesting"))
            elif _edges_near_but_not_coincident(world[a.id], world[b.id]):
                out.append(Violation("NearCoincidentEdges", (a.id, b.id), "edges nearly but not exactly coincident"))

    bounds = scene.bounds
    if not (bounds.x_min < bounds.x_max and bounds.y_min < bounds.y_max):
        out.append(Violation("BadBounds", (), "bounds rectangle is empty"))
    for el in els:
        if not all(bounds.contains(v) for v in world[el.id].vertices):
            out.append(Violation("OutOfBounds", (el.id,), f"element '{el.id}' extends outside bounds"))
    for s in scene.sources:
        if not bounds.contains(s.pose.position):
            out.append(Violation("OutOfBounds", (s.id,), f"source '{s.id}' lies outside bounds"))
        if isinstance(s.beam, Fan):
            if not (2 <= s.beam.count <= FAN_COUNT_MAX):
                out.append(Violation("BadBeam", (s.id,), f"fan count {s.beam.count} outside [2, {FAN_COUNT_MAX}]"))
            if not (0.0 < s.beam.spread_rad <= FAN_SPREAD_MAX):
                out.append(Violation("BadBeam", (s.id,), f"fan spread {s.beam.spread_rad} outside (0, pi/4]"))
        if isinstance(s.spectrum, Mono):
            lam = s.spectrum.lambda_nm
            if not (WAVELENGTH_MIN_NM <= lam <= WAVELENGTH_MAX_NM):
                out.append(Violation("BadWavelength", (s.id,), f"wavelength {lam} nm outside [{WAVELENGTH_MIN_NM}, {WAVELENGTH_MAX_NM}]"))
    return out


def resolve_medium(scene: SceneDoc, p: Vec2) -> str:
    """Medium name at p: innermost containing element, else background.

    Raises OnBoundary when p sits within EPS_HIT of any world-space edge
    (the caller must epsilon-offset and retry).
    """
    best_name = scene.background
    best_area = math.inf
    for el in scene.elements:
        poly = el.world_shape()
        c = point_in_polygon(p, poly)
        if c is Containment.BOUNDARY:
            raise OnBoundary(f"point ({p.x}, {p.y}) lies on the boundary of '{el.id}'")
        if c is Containment.INSIDE:
            area = abs(poly.signed_area())
            if area < best_area:
                best_area = area
                best_name = el.medium
    return best_name


def set_pose(scene: SceneDoc, obj_id: str, pose: Pose) -> SceneDoc:
    """Copy of the scene with the named element/source moved to pose.

    The result is re-validated; an edit that breaks any invariant raises
    PoseRejected with the violations and leaves the input untouched.
    """
    known = {e.id for e in scene.elements} | {s.id for s in scene.sources}
    if obj_id not in known:
        raise UnknownId(f"no element or source with id '{obj_id}'")
    new_elements = tuple(
        dataclasses.replace(e, pose=pose) if e.id == obj_id else e for e in scene.elements
    )
    new_sources = tuple(
        dataclasses.replace(s, pose=pose) if s.id == obj_id else s for s in scene.sources
    )
    new_scene = dataclasses.replace(scene, elements=new_elements, sources=new_sources)
    violations = validate(new_scene)
    if violations:
        raise PoseRejected(violations)
    return new_scene


@dataclass(frozen=True)
class EmittedRay:
    origin: Vec2
    direction: Vec2
    lambda_nm: float


def emit_rays(source: Source, white_table: tuple[float, ...] = WHITE_TABLE_NM) -> list[EmittedRay]:
    """Expand a source into its (direction, wavelength) grid.

    Fan directions are evenly spaced over [heading - spread/2,
    heading + spread/2], endpoints included; White uses the 7-entry table.
    Order: direction index ascending, then table order (descending nm).
    """
    heading = source.pose.rotation
    if isinstance(source.beam, SingleRay):
        angles = [heading]
    else:
        n, spread = source.beam.count, source.beam.spread_rad
        start = heading - spread / 2.0
        angles = [start + i * spread / (n - 1) for i in range(n)]
    if isinstance(source.spectrum, Mono):
        lambdas = [source.spectrum.lambda_nm]
    else:
        lambdas = list(white_table)
    return [
        EmittedRay(source.pose.position, Vec2.from_angle(a), lam)
        for a in angles
        for lam in lambdas
    ]
