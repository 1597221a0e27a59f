"""Canonical scenes and the sweep analyses that probe them.

Four parametric builders (oceanarium, glass plate, triangular prism,
polygonal pendant via regular_prism) plus closed-form oracles and sweeps:
prism spread vs incidence, underwater visibility cutoff, pendant scatter.
Builders quantize geometry to the serialization precision so identical
parameters give byte-identical documents.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Optional

from .errors import BadEyePoint, NoTransmission, SceneInvalid
from .export import q12
from .geometry import (
    Containment,
    Polygon,
    Pose,
    Vec2,
    normalize,
    point_in_polygon,
    point_segment_distance,
)
from .optics import DEFAULT_MATERIALS, WHITE_TABLE_NM, Constant, Medium
from .scene import (
    Bounds,
    Element,
    Mono,
    SceneDoc,
    SingleRay,
    Source,
    White,
    validate,
)
from .tracer import EV_EXITED, EV_REFRACTED, RayPath, trace_ray

# Incidence used for the default prism source; well above every cutoff of
# the default materials, so the stock scene shows seven emerging cones.
DEFAULT_PRISM_INCIDENCE = math.radians(50.0)
# Sunbeam impact offset for the pendant analysis, as a fraction of the
# circumradius; off-center hits make the per-color routes diverge.
PENDANT_IMPACT_OFFSET = 0.5


def _qv(x: float, y: float) -> Vec2:
    return Vec2(q12(x), q12(y))


def _materials(*names: str, overrides: Optional[dict[str, Medium]] = None) -> tuple[Medium, ...]:
    table = dict(DEFAULT_MATERIALS)
    if overrides:
        table.update(overrides)
    return tuple(table[n] for n in names)


# ---------------------------------------------------------------------------
# builders

def oceanarium(
    wall_thickness: float = 0.1,
    tank_width: float = 6.0,
    tank_height: float = 3.0,
    water_level_fraction: float = 0.5,
    media: Optional[dict[str, Medium]] = None,
) -> SceneDoc:
    """Vertical glass wall with a water body behind it, air everywhere else.

    The wall spans the full height on the left; water fills the stated
    fraction of the tank on the right and shares the wall's inner face
    exactly. The scene reaches all six ordered media pairs among
    {air, glass, water}.
    """
    if wall_thickness <= 0 or tank_width <= 0 or tank_height <= 0:
        raise ValueError("oceanarium dimensions must be positive")
    if not (0.0 < water_level_fraction <= 1.0):
        raise ValueError("water_level_fraction must be in (0, 1]")
    w, tw, th = wall_thickness, tank_width, tank_height
    level = th * water_level_fraction
    wall = Element(
        id="wall",
        shape=Polygon([_qv(-w, 0.0), _qv(0.0, 0.0), _qv(0.0, th), _qv(-w, th)]),
        medium="glass",
        pose=Pose(Vec2(0.0, 0.0), 0.0),
    )
    water = Element(
        id="water",
        shape=Polygon([_qv(0.0, 0.0), _qv(tw, 0.0), _qv(tw, level), _qv(0.0, level)]),
        medium="water",
        pose=Pose(Vec2(0.0, 0.0), 0.0),
    )
    flashlight = Source(
        id="flashlight",
        pose=Pose(_qv(0.05 * tw, 0.5 * level), q12(math.radians(150.0))),
        beam=SingleRay(),
        spectrum=Mono(550.0),
    )
    scene = SceneDoc(
        background="air",
        media=_materials("air", "glass", "water", overrides=media),
        elements=(wall, water),
        sources=(flashlight,),
        bounds=Bounds(q12(-w - 1.5), -1.0, q12(tw + 1.0), q12(th + 1.0)),
    )
    violations = validate(scene)
    if violations:
        raise SceneInvalid(violations)
    return scene


def glass_plate(thickness: float = 1.0, n: float = 1.5) -> SceneDoc:
    """Rectangular plate with parallel faces in air; source hits at 30 degrees."""
    if thickness <= 0:
        raise ValueError("plate thickness must be positive")
    if n < 1.0:
        raise ValueError("plate index must be >= 1")
    half_h = 2.0
    plate = Element(
        id="plate",
        shape=Polygon(
            [_qv(0.0, -half_h), _qv(thickness, -half_h), _qv(thickness, half_h), _qv(0.0, half_h)]
        ),
        medium="glass",
        pose=Pose(Vec2(0.0, 0.0), 0.0),
    )
    source = Source(
        id="beam",
        pose=Pose(_qv(-1.0, 0.0), q12(math.radians(30.0))),
        beam=SingleRay(),
        spectrum=Mono(550.0),
    )
    scene = SceneDoc(
        background="air",
        media=(DEFAULT_MATERIALS["air"], Medium("glass", Constant(q12(n)))),
        elements=(plate,),
        sources=(source,),
        bounds=Bounds(-2.0, q12(-half_h - 1.0), q12(thickness + 2.0), q12(half_h + 1.0)),
    )
    violations = validate(scene)
    if violations:
        raise SceneInvalid(violations)
    return scene


def regular_prism(
    sides: int = 3,
    circumradius: float = 1.0,
    material: str = "crown",
    orientation: float = 0.0,
) -> SceneDoc:
    """Regular k-gon prism centered at the origin, first vertex pointing up.

    sides=3 is the classic triangular prism; higher counts model the
    polygonal pendant. A white single-ray source aims at the upper-left
    face at a stock incidence.
    """
    if sides < 3:
        raise ValueError("regular prism needs at least 3 sides")
    if circumradius <= 0:
        raise ValueError("circumradius must be positive")
    if material not in DEFAULT_MATERIALS:
        raise ValueError(f"unknown material '{material}'")
    r = circumradius
    verts = [
        _qv(r * math.cos(math.pi / 2 + 2 * math.pi * i / sides),
            r * math.sin(math.pi / 2 + 2 * math.pi * i / sides))
        for i in range(sides)
    ]
    prism = Element(
        id="prism",
        shape=Polygon(verts),
        medium=material,
        pose=Pose(Vec2(0.0, 0.0), q12(orientation)),
    )
    bounds = Bounds(q12(-5.0 * r), q12(-5.0 * r), q12(5.0 * r), q12(5.0 * r))
    bare = SceneDoc(
        background="air",
        media=_materials("air", material),
        elements=(prism,),
        sources=(),
        bounds=bounds,
    )
    origin, direction = prism_entry(bare, DEFAULT_PRISM_INCIDENCE)
    source = Source(
        id="sunbeam",
        pose=Pose(_qv(origin.x, origin.y), q12(direction.angle() % (2 * math.pi))),
        beam=SingleRay(),
        spectrum=White(),
    )
    scene = SceneDoc(
        background=bare.background,
        media=bare.media,
        elements=bare.elements,
        sources=(source,),
        bounds=bounds,
    )
    violations = validate(scene)
    if violations:
        raise SceneInvalid(violations)
    return scene


SCENARIO_BUILDERS = {
    "oceanarium": oceanarium,
    "glass_plate": glass_plate,
    "regular_prism": regular_prism,
}


# ---------------------------------------------------------------------------
# closed-form prism oracles

def min_deviation_angle(apex: float, n: float) -> float:
    """Minimum total deflection through a prism: 2*asin(n*sin(A/2)) - A."""
    s = n * math.sin(apex / 2.0)
    if s > 1.0:
        raise NoTransmission(f"n*sin(A/2) = {s} > 1: every ray is internally reflected")
    return 2.0 * math.asin(s) - apex


def prism_entry(scene: SceneDoc, incidence: float) -> tuple[Vec2, Vec2]:
    """Ray aimed at the midpoint of the prism's upper-left face.

    The entry face is the edge leaving the topmost vertex (CCW); the
    incident direction is the inward face normal rotated CCW by the
    incidence angle, which sends the refracted ray toward the far face.
    Returns (origin, unit direction); the origin sits outside the prism.
    """
    poly = scene.elements[0].world_shape()
    vs = poly.vertices
    i0 = max(range(len(vs)), key=lambda i: (vs[i].y, -vs[i].x))
    a, b = vs[i0], vs[(i0 + 1) % len(vs)]
    inward = normalize((b - a).perp())
    d = inward.rotated(incidence)
    mid = Vec2((a.x + b.x) / 2.0, (a.y + b.y) / 2.0)
    centroid = Vec2(sum(v.x for v in vs) / len(vs), sum(v.y for v in vs) / len(vs))
    reach = 2.0 * max((v - centroid).norm() for v in vs)
    return mid - d.scale(reach), d


def deviation_between(d_in: Vec2, exit_angle: float) -> float:
    """Unsigned angle between the entry direction and an exit direction."""
    d_out = Vec2.from_angle(exit_angle)
    c = max(-1.0, min(1.0, d_in.dot(d_out)))
    return math.acos(c)


# ---------------------------------------------------------------------------
# spread sweep

@dataclass(frozen=True)
class SweepRow:
    incidence: float  # radians
    exit_angles: dict[float, Optional[float]]  # wavelength -> exit direction angle (rad)
    spread: Optional[float]  # max - min over exiting wavelengths, cones >= 2 only
    cones: int


def _with_prism_material(scene: SceneDoc, material: str) -> SceneDoc:
    if material not in DEFAULT_MATERIALS:
        raise ValueError(f"unknown material '{material}'")
    el = dataclasses.replace(scene.elements[0], medium=material)
    names = {m.name for m in scene.media}
    media = scene.media if material in names else scene.media + (DEFAULT_MATERIALS[material],)
    return dataclasses.replace(scene, elements=(el,) + scene.elements[1:], media=media)


def _clean_exit_angle(scene: SceneDoc, material: str, path: RayPath) -> Optional[float]:
    """Exit direction when the trace is the textbook two-refraction route
    (in through the first face, out through the second); None otherwise."""
    if path.terminal != EV_EXITED or path.events != (EV_REFRACTED, EV_REFRACTED):
        return None
    if len(path.segments) != 3 or path.segments[1].medium != material:
        return None
    last = path.segments[-1]
    return (last.end - last.start).angle()


def trace_prism_white(
    scene: SceneDoc, material: str, incidence: float
) -> dict[float, Optional[float]]:
    """Per-wavelength clean-exit angle for a white ray at the given incidence."""
    probe = _with_prism_material(scene, material)
    origin, d = prism_entry(probe, incidence)
    out: dict[float, Optional[float]] = {}
    for lam in WHITE_TABLE_NM:
        path = trace_ray(probe, origin, d, lam)
        out[lam] = _clean_exit_angle(probe, material, path)
    return out


def spread_sweep(
    scene: SceneDoc,
    material: str,
    incidence_range: tuple[float, float],
    step: float,
) -> list[SweepRow]:
    """White-ray exit survey over incidence angles (all radians).

    For each incidence the seven-wavelength ray aims at the first face;
    each wavelength records its exit direction after the second face, or
    none when internal TIR prevents that exit. Rows ascend by incidence.
    """
    if step <= 0:
        raise ValueError("sweep step must be positive")
    lo, hi = incidence_range
    rows = []
    count = int(math.floor((hi - lo) / step + 0.5)) + 1
    for i in range(count):
        inc = lo + i * step
        if inc > hi + step * 1e-9:
            break
        angles = trace_prism_white(scene, material, inc)
        present = [a for a in angles.values() if a is not None]
        cones = len(present)
        spread = (max(present) - min(present)) if cones >= 2 else None
        rows.append(SweepRow(inc, angles, spread, cones))
    return rows


def refine_exit_cutoff(
    scene: SceneDoc,
    material: str,
    lambda_nm: float,
    lo: float,
    hi: float,
    tol: float = 1e-6,
) -> Optional[float]:
    """Bisect the exit/no-exit flip for one wavelength to tol radians.

    Expects no exit at lo and exit at hi (the first-face geometry makes the
    classification monotone in between); returns None if the bracket does
    not actually straddle a flip.
    """
    probe = _with_prism_material(scene, material)

    def exits(inc: float) -> bool:
        origin, d = prism_entry(probe, inc)
        return _clean_exit_angle(probe, material, trace_ray(probe, origin, d, lambda_nm)) is not None

    if exits(lo) or not exits(hi):
        return None
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if exits(mid):
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# underwater visibility

def _eye_inside_non_glass_element(scene: SceneDoc, eye: Vec2) -> bool:
    for el in scene.elements:
        if el.medium == "glass":
            continue
        if point_in_polygon(eye, el.world_shape()) is Containment.INSIDE:
            return True
    return False


def _sees_through_wall(scene: SceneDoc, eye: Vec2, look: float, wall_left_x: float) -> bool:
    """Does a ray from the eye at this incidence emerge through the wall's
    far face? look is the incidence angle from the wall normal (x axis)."""
    d = Vec2(-math.cos(look), math.sin(look))
    path = trace_ray(scene, eye, d, 550.0)
    for i in range(len(path.segments) - 1):
        seg, nxt = path.segments[i], path.segments[i + 1]
        if seg.medium == "glass" and nxt.medium == scene.background:
            if nxt.start.x <= wall_left_x + 1e-6:
                return True
    return False


def visibility_cutoff(
    scene: SceneDoc,
    eye: Vec2,
    lo: float = math.radians(5.0),
    hi: float = math.radians(60.0),
    tol: float = 1e-4,
) -> Optional[float]:
    """Largest water-side incidence that still emerges beyond the glass wall.

    Bisection over look angles (radians from the wall normal, looking
    upward toward the wall). Returns None when even the top of the search
    range still sees through (no cutoff below hi). With water at n=1.33 the
    cutoff is asin(1/1.33) regardless of the glass index: the chained-media
    identity cancels the intermediate slab.
    """
    if not _eye_inside_non_glass_element(scene, eye):
        raise BadEyePoint(f"eye ({eye.x}, {eye.y}) is not inside the water region")
    wall = next((el for el in scene.elements if el.medium == "glass"), None)
    if wall is None:
        raise BadEyePoint("scene has no glass wall to look through")
    wall_left_x = min(v.x for v in wall.world_shape().vertices)

    if _sees_through_wall(scene, eye, hi, wall_left_x):
        return None
    if not _sees_through_wall(scene, eye, lo, wall_left_x):
        raise BadEyePoint("eye cannot see through the wall even at the lowest search angle")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if _sees_through_wall(scene, eye, mid, wall_left_x):
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# ---------------------------------------------------------------------------
# pendant scatter

@dataclass(frozen=True)
class ScatterExit:
    face: int  # polygon edge index the color leaves through
    direction: Vec2


@dataclass(frozen=True)
class ScatterResult:
    orientation: float
    exits: dict[float, Optional[ScatterExit]]
    separation: float  # max exit-direction angle between different-face pairs


def _pendant_exit(scene: SceneDoc, material: str, path: RayPath) -> Optional[ScatterExit]:
    """Face index and direction of the single material->air departure."""
    if path.terminal != EV_EXITED or len(path.segments) < 2:
        return None
    last = path.segments[-1]
    prev = path.segments[-2]
    if prev.medium != material or last.medium != scene.background:
        return None
    poly = scene.elements[0].world_shape()
    for i, (a, b) in enumerate(poly.edges()):
        if point_segment_distance(last.start, a, b) < 1e-6:
            return ScatterExit(i, normalize(last.end - last.start))
    return None


def pendant_scatter(
    sides: int,
    material: str,
    orientation_range: tuple[float, float],
    step: float,
) -> Optional[ScatterResult]:
    """Search pendant orientations for multi-face color scatter.

    A horizontal white sunbeam strikes the pendant off-center; for each
    orientation the seven colors are traced and their exit faces and
    directions recorded. Returns the orientation maximizing the angular
    separation between colors leaving through different faces, provided it
    exceeds 30 degrees; None when no orientation in range qualifies.
    """
    if sides < 4:
        raise ValueError("pendant analysis needs at least 4 sides")
    if step <= 0:
        raise ValueError("orientation step must be positive")
    lo, hi = orientation_range
    best: Optional[ScatterResult] = None
    count = int(math.floor((hi - lo) / step + 0.5)) + 1
    r = 1.0
    origin = Vec2(-3.0 * r, PENDANT_IMPACT_OFFSET * r)
    d = Vec2(1.0, 0.0)
    for i in range(count):
        orientation = lo + i * step
        if orientation > hi + step * 1e-9:
            break
        scene = regular_prism(sides, r, material, orientation)
        exits: dict[float, Optional[ScatterExit]] = {}
        for lam in WHITE_TABLE_NM:
            path = trace_ray(scene, origin, d, lam)
            exits[lam] = _pendant_exit(scene, material, path)
        sep = 0.0
        got = [e for e in exits.values() if e is not None]
        for x in range(len(got)):
            for y in range(x + 1, len(got)):
                if got[x].face != got[y].face:
                    c = max(-1.0, min(1.0, got[x].direction.dot(got[y].direction)))
                    sep = max(sep, math.acos(c))
        if sep > math.radians(30.0) and (best is None or sep > best.separation):
            best = ScatterResult(orientation, exits, sep)
    return best


# ---------------------------------------------------------------------------
# media-pair coverage probes

def oceanarium_pair_probes(scene: SceneDoc) -> list[Pose]:
    """Flashlight poses that together drive rays across all six ordered
    media pairs of the oceanarium (underwater, above the surface, and in
    front of the wall)."""
    water = next(el for el in scene.elements if el.medium == "water")
    wall = next(el for el in scene.elements if el.medium == "glass")
    wvs = water.world_shape().vertices
    w_xmax = max(v.x for v in wvs)
    w_ymax = max(v.y for v in wvs)
    wall_xmin = min(v.x for v in wall.world_shape().vertices)
    return [
        # under water, aimed up-left at the wall: water->glass, glass->air
        Pose(Vec2(0.3, 0.5 * w_ymax), math.radians(150.0)),
        # in air above the water, aimed steeply down: air->water, water->air
        Pose(Vec2(0.5 * w_xmax, w_ymax + 0.8), math.radians(260.0)),
        # in air left of the wall, aimed slightly down-right: air->glass, glass->water
        Pose(Vec2(wall_xmin - 0.8, 0.4 * w_ymax), math.radians(-10.0)),
    ]


def media_pairs(paths: list[RayPath]) -> set[tuple[str, str]]:
    """Ordered (from, to) medium pairs crossed at refraction events."""
    pairs: set[tuple[str, str]] = set()
    for p in paths:
        for i, ev in enumerate(p.events):
            if ev == EV_REFRACTED and i + 1 < len(p.segments):
                a = p.segments[i].medium
                b = p.segments[i + 1].medium
                if a != b:
                    pairs.add((a, b))
    return pairs
