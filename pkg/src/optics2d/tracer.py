"""Event-loop propagation of rays through a validated scene.

A trace repeatedly advances to the nearest boundary (element edges plus
the bounds rectangle), applies the refraction kernel with the media
resolved on each side of the hit, and records one polyline segment per
medium traversal. Terminal events: leaving the bounds, hitting the event
cap, or a grazing/corner hit (normal ill-defined, honest stop).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .errors import OnBoundary, SceneInvalid, UnknownId
from .geometry import EPS_HIT, Vec2, intersect_ray_segment, normalize
from .optics import Grazing, Refracted, TotalInternal, index_at, refract_or_reflect
from .scene import EPS_SIDE, SceneDoc, emit_rays, resolve_medium, validate

MAX_EVENTS_DEFAULT = 64

# Event names double as the wire format.
EV_REFRACTED = "refracted"
EV_TIR = "total_internal_reflection"
EV_GRAZING = "grazing"
EV_EXITED = "exited_bounds"
EV_MAX_EVENTS = "max_events_reached"

TERMINAL_EVENTS = (EV_EXITED, EV_MAX_EVENTS, EV_GRAZING)


@dataclass(frozen=True)
class Segment:
    start: Vec2
    end: Vec2
    medium: str


@dataclass(frozen=True)
class RayPath:
    lambda_nm: float
    segments: tuple[Segment, ...]
    events: tuple[str, ...]  # one per internal vertex
    terminal: str
    grazing_dir: Optional[Vec2] = None  # tangent direction, grazing terminals only

    def vertices(self) -> list[Vec2]:
        """Internal vertices (boundary interaction points, excluding endpoints)."""
        return [s.end for s in self.segments[:-1]]


@dataclass(frozen=True)
class BoundaryHit:
    t: float
    point: Vec2
    normal: Vec2  # unit, oriented against the incoming direction
    is_bounds: bool
    medium_before: str
    medium_after: str
    n_before: float
    n_after: float
    element_id: str
    near_vertex: bool


def _resolve_offset(scene: SceneDoc, point: Vec2, step: Vec2) -> Optional[str]:
    """Medium at point + step, retrying farther out if the sample lands on
    another edge; None when even the widened samples are ambiguous."""
    for factor in (1.0, 10.0, 100.0):
        try:
            return resolve_medium(scene, point + step.scale(factor))
        except OnBoundary:
            continue
    return None


def nearest_boundary_hit(
    scene: SceneDoc, origin: Vec2, direction: Vec2, lambda_nm: float
) -> Optional[BoundaryHit]:
    """Closest boundary crossing ahead of origin (t > EPS_HIT).

    Element edges and the bounds rectangle compete; ties resolve by element
    order then edge index so coincident (legally touching) edges pick a
    deterministic winner. Media on each side come from epsilon-offset
    sampling along the oriented normal, never from edge bookkeeping.
    """
    best = None  # (t, order_key, a, b, element_id, is_bounds)
    for ei, el in enumerate(scene.elements):
        poly = el.world_shape()
        for ki, (a, b) in enumerate(poly.edges()):
            hit = intersect_ray_segment(origin, direction, a, b)
            if hit is None:
                continue
            key = (hit.t, 0, ei, ki)
            if best is None or key < best[0]:
                best = (key, hit, a, b, el.id, False)
    for ki, (a, b) in enumerate(scene.bounds.edges()):
        hit = intersect_ray_segment(origin, direction, a, b)
        if hit is None:
            continue
        key = (hit.t, 1, 0, ki)
        if best is None or key < best[0]:
            best = (key, hit, a, b, "", True)

    if best is None:
        return None
    _, hit, a, b, element_id, is_bounds = best
    edge = b - a
    normal = normalize(edge.perp())
    if normal.dot(direction) > 0.0:
        normal = -normal
    near_vertex = (hit.point - a).norm() < EPS_HIT or (hit.point - b).norm() < EPS_HIT

    step = normal.scale(EPS_SIDE)
    before = _resolve_offset(scene, hit.point, step)
    after = _resolve_offset(scene, hit.point, -step)
    if before is None or after is None:
        # Ambiguous side sampling (stacked edges at a corner): let the
        # caller treat it as a corner hit.
        near_vertex = True
        before = before or scene.background
        after = after or scene.background
    table = scene.media_table()
    return BoundaryHit(
        t=hit.t,
        point=hit.point,
        normal=normal,
        is_bounds=is_bounds,
        medium_before=before,
        medium_after=after,
        n_before=index_at(table[before], lambda_nm),
        n_after=index_at(table[after], lambda_nm),
        element_id=element_id,
        near_vertex=near_vertex,
    )


def trace_ray(
    scene: SceneDoc,
    origin: Vec2,
    direction: Vec2,
    lambda_nm: float,
    max_events: int = MAX_EVENTS_DEFAULT,
    _validated: bool = False,
) -> RayPath:
    """Propagate one ray until a terminal event.

    Refracted/TIR vertices continue from the hit point offset EPS_HIT along
    the outgoing direction (prevents re-hitting the surface just departed).
    Grazing and corner hits terminate; so do bounds exits and the event cap.
    """
    if not _validated:
        violations = validate(scene)
        if violations:
            raise SceneInvalid(violations)
    if not scene.bounds.contains(origin):
        raise OnBoundary(f"trace origin ({origin.x}, {origin.y}) not strictly inside bounds")
    direction = normalize(direction)
    resolve_medium(scene, origin)  # raises OnBoundary for on-edge origins

    segments: list[Segment] = []
    events: list[str] = []
    pos = origin
    d = direction
    while True:
        hit = nearest_boundary_hit(scene, pos, d, lambda_nm)
        if hit is None:
            # Unreachable for in-bounds origins (the bounds rectangle always
            # intersects); guard keeps the loop total.
            raise OnBoundary("ray escaped without hitting the bounds rectangle")
        segments.append(Segment(pos, hit.point, hit.medium_before))
        if hit.is_bounds:
            return RayPath(lambda_nm, tuple(segments), tuple(events), EV_EXITED)
        if hit.near_vertex:
            return RayPath(lambda_nm, tuple(segments), tuple(events), EV_GRAZING)
        outcome = refract_or_reflect(d, hit.normal, hit.n_before, hit.n_after)
        if isinstance(outcome, Grazing):
            return RayPath(
                lambda_nm, tuple(segments), tuple(events), EV_GRAZING, grazing_dir=outcome.direction
            )
        if len(events) >= max_events:
            return RayPath(lambda_nm, tuple(segments), tuple(events), EV_MAX_EVENTS)
        if isinstance(outcome, Refracted):
            events.append(EV_REFRACTED)
        elif isinstance(outcome, TotalInternal):
            events.append(EV_TIR)
        d = outcome.direction
        pos = hit.point + d.scale(EPS_HIT)


def trace_source(
    scene: SceneDoc, source_id: str, max_events: int = MAX_EVENTS_DEFAULT
) -> list[RayPath]:
    """Trace every (direction, wavelength) ray a source emits.

    Output order is deterministic: direction index first, wavelength
    descending (the white table is stored red to violet).
    """
    violations = validate(scene)
    if violations:
        raise SceneInvalid(violations)
    source = None
    for s in scene.sources:
        if s.id == source_id:
            source = s
            break
    if source is None:
        raise UnknownId(f"no source with id '{source_id}'")
    return [
        trace_ray(scene, r.origin, r.direction, r.lambda_nm, max_events, _validated=True)
        for r in emit_rays(source)
    ]
