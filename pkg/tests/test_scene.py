import math

import pytest

from conftest import random_scene
from optics2d.errors import OnBoundary, PoseRejected, UnknownId
from optics2d.export import scene_to_json
from optics2d.geometry import Containment, Polygon, Pose, Vec2, point_in_polygon
from optics2d.optics import DEFAULT_MATERIALS
from optics2d.scene import (
    Bounds,
    Element,
    Fan,
    Mono,
    SceneDoc,
    SingleRay,
    Source,
    White,
    emit_rays,
    resolve_medium,
    set_pose,
    validate,
)
from optics2d.scenarios import oceanarium


def square(cx, cy, half):
    return Polygon(
        [
            Vec2(cx - half, cy - half),
            Vec2(cx + half, cy - half),
            Vec2(cx + half, cy + half),
            Vec2(cx - half, cy + half),
        ]
    )


def two_square_scene(offset: float) -> SceneDoc:
    return SceneDoc(
        background="air",
        media=(DEFAULT_MATERIALS["air"], DEFAULT_MATERIALS["glass"]),
        elements=(
            Element("a", square(0, 0, 1), "glass", Pose(Vec2(0, 0), 0.0)),
            Element("b", square(0, 0, 1), "glass", Pose(Vec2(offset, 0), 0.0)),
        ),
        sources=(),
        bounds=Bounds(-10, -10, 10, 10),
    )


def test_oceanarium_validates_ok():
    assert validate(oceanarium()) == []


def test_partial_overlap_flagged():
    violations = validate(two_square_scene(1.0))
    assert any(v.kind == "PartialOverlap" and set(v.ids) == {"a", "b"} for v in violations)


def test_disjoint_and_nested_are_fine():
    assert validate(two_square_scene(5.0)) == []
    nested = SceneDoc(
        background="air",
        media=(DEFAULT_MATERIALS["air"], DEFAULT_MATERIALS["glass"], DEFAULT_MATERIALS["water"]),
        elements=(
            Element("tank", square(0, 0, 2), "glass", Pose(Vec2(0, 0), 0.0)),
            Element("pool", square(0, 0, 1), "water", Pose(Vec2(0, 0), 0.0)),
        ),
        sources=(),
        bounds=Bounds(-10, -10, 10, 10),
    )
    assert validate(nested) == []


def test_unknown_medium_flagged():
    scene = SceneDoc(
        background="air",
        media=(DEFAULT_MATERIALS["air"],),
        elements=(Element("blob", square(0, 0, 1), "oil", Pose(Vec2(0, 0), 0.0)),),
        sources=(),
        bounds=Bounds(-10, -10, 10, 10),
    )
    violations = validate(scene)
    assert any(v.kind == "UnknownMedium" and "oil" in v.message for v in violations)


def test_out_of_bounds_flagged():
    scene = SceneDoc(
        background="air",
        media=(DEFAULT_MATERIALS["air"], DEFAULT_MATERIALS["glass"]),
        elements=(Element("a", square(0, 0, 1), "glass", Pose(Vec2(9.5, 0), 0.0)),),
        sources=(),
        bounds=Bounds(-10, -10, 10, 10),
    )
    assert any(v.kind == "OutOfBounds" for v in validate(scene))


def test_near_coincident_edges_flagged():
    # b's left edge sits 1e-8 from a's right edge: inside the ambiguity band.
    violations = validate(two_square_scene(2.0 + 1e-8))
    assert any(v.kind == "NearCoincidentEdges" for v in violations)
    # Exactly touching is legal.
    assert validate(two_square_scene(2.0)) == []


def test_resolve_medium_background_and_nesting():
    scene = oceanarium()
    assert resolve_medium(scene, Vec2(3.0, 2.5)) == "air"  # above the water
    assert resolve_medium(scene, Vec2(3.0, 0.75)) == "water"
    assert resolve_medium(scene, Vec2(-0.05, 1.0)) == "glass"  # inside the wall
    with pytest.raises(OnBoundary):
        resolve_medium(scene, Vec2(0.0, 0.75))  # on the wall/water shared face


def test_resolve_medium_innermost_wins():
    nested = SceneDoc(
        background="air",
        media=(DEFAULT_MATERIALS["air"], DEFAULT_MATERIALS["glass"], DEFAULT_MATERIALS["water"]),
        elements=(
            Element("tank", square(0, 0, 2), "glass", Pose(Vec2(0, 0), 0.0)),
            Element("pool", square(0, 0, 1), "water", Pose(Vec2(0, 0), 0.0)),
        ),
        sources=(),
        bounds=Bounds(-10, -10, 10, 10),
    )
    assert resolve_medium(nested, Vec2(0.5, 0.5)) == "water"
    assert resolve_medium(nested, Vec2(1.5, 0.5)) == "glass"
    assert resolve_medium(nested, Vec2(3.0, 0.5)) == "air"


def test_resolve_medium_matches_brute_force(rng):
    for _ in range(3):
        scene = random_scene(rng)
        if validate(scene):
            continue
        polys = [(el, el.world_shape()) for el in scene.elements]
        for _ in range(10_000):
            p = Vec2(rng.uniform(-8, 8), rng.uniform(-8, 8))
            try:
                got = resolve_medium(scene, p)
            except OnBoundary:
                continue
            containing = [
                (abs(poly.signed_area()), el.medium)
                for el, poly in polys
                if point_in_polygon(p, poly) is Containment.INSIDE
            ]
            want = min(containing)[1] if containing else "air"
            assert got == want


def test_set_pose_rotates_only_named_object():
    scene = oceanarium()
    old = scene.sources[0].pose
    new_pose = Pose(old.position, old.rotation + math.radians(5.0))
    out = set_pose(scene, "flashlight", new_pose)
    assert out.sources[0].pose.rotation == pytest.approx(old.rotation + math.radians(5))
    assert out.elements == scene.elements
    assert out.bounds == scene.bounds


def test_set_pose_is_pure():
    scene = oceanarium()
    before = scene_to_json(scene)
    set_pose(scene, "flashlight", Pose(Vec2(1.0, 0.5), 2.0))
    assert scene_to_json(scene) == before


def test_set_pose_same_pose_is_identity():
    scene = oceanarium()
    out = set_pose(scene, "wall", scene.elements[0].pose)
    assert out == scene


def test_set_pose_rejects_overlap():
    scene = two_square_scene(5.0)
    with pytest.raises(PoseRejected) as err:
        set_pose(scene, "b", Pose(Vec2(1.0, 0.0), 0.0))
    assert any(v.kind == "PartialOverlap" for v in err.value.violations)


def test_set_pose_unknown_id():
    with pytest.raises(UnknownId):
        set_pose(oceanarium(), "ghost", Pose(Vec2(0, 0), 0.0))


def test_emit_single_mono():
    src = Source("s", Pose(Vec2(0, 0), 1.0), SingleRay(), Mono(550.0))
    rays = emit_rays(src)
    assert len(rays) == 1
    assert rays[0].lambda_nm == 550.0
    assert rays[0].direction.x == pytest.approx(math.cos(1.0))


def test_emit_single_white():
    src = Source("s", Pose(Vec2(0, 0), 0.25), SingleRay(), White())
    rays = emit_rays(src)
    assert [r.lambda_nm for r in rays] == [650.0, 610.0, 580.0, 550.0, 470.0, 440.0, 410.0]
    assert all(r.direction == rays[0].direction for r in rays)


def test_emit_fan_spacing():
    src = Source("s", Pose(Vec2(0, 0), 0.0), Fan(3, math.radians(10)), Mono(550.0))
    rays = emit_rays(src)
    headings = [math.degrees(r.direction.angle()) for r in rays]
    assert headings == pytest.approx([-5.0, 0.0, 5.0], abs=1e-9)


def test_emit_fan_white_grid():
    src = Source("s", Pose(Vec2(0, 0), 0.0), Fan(4, math.radians(20)), White())
    rays = emit_rays(src)
    assert len(rays) == 28  # directions x wavelengths
    # direction-major order, wavelength descending inside each direction
    assert [r.lambda_nm for r in rays[:7]] == [650.0, 610.0, 580.0, 550.0, 470.0, 440.0, 410.0]


def test_fan_constraints_validated():
    bad = SceneDoc(
        background="air",
        media=(DEFAULT_MATERIALS["air"],),
        elements=(),
        sources=(
            Source("wide", Pose(Vec2(0, 0), 0.0), Fan(100, math.radians(80)), Mono(550.0)),
            Source("uv", Pose(Vec2(1, 0), 0.0), SingleRay(), Mono(200.0)),
        ),
        bounds=Bounds(-10, -10, 10, 10),
    )
    kinds = {v.kind for v in validate(bad)}
    assert "BadBeam" in kinds and "BadWavelength" in kinds
