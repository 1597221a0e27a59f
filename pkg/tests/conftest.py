"""Shared helpers: random geometry generators and scene fixtures."""

import math
import random

import pytest

from optics2d.geometry import Polygon, Pose, Vec2
from optics2d.optics import DEFAULT_MATERIALS, Constant, Medium
from optics2d.scene import Bounds, Element, Mono, SceneDoc, SingleRay, Source


def star_polygon(rng: random.Random, n_min=3, n_max=10, r_min=0.3, r_max=1.5) -> Polygon:
    """Random simple CCW polygon: sorted angles with randomized radii."""
    n = rng.randint(n_min, n_max)
    angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(n))
    # Collapse near-duplicate angles to keep edges non-degenerate.
    kept = []
    for a in angles:
        if not kept or a - kept[-1] > 0.05:
            kept.append(a)
    while len(kept) < 3:
        kept.append(kept[-1] + 0.5)
    poly = Polygon(
        Vec2(rng.uniform(r_min, r_max) * math.cos(a), rng.uniform(r_min, r_max) * math.sin(a))
        for a in kept
    )
    # Radially sorted points are always simple but can come out clockwise
    # when a large angular gap meets uneven radii.
    if poly.signed_area() < 0:
        poly = Polygon(reversed(poly.vertices))
    return poly


def random_scene(rng: random.Random) -> SceneDoc:
    """Valid scene with a few disjoint elements on a coarse grid."""
    media = (
        DEFAULT_MATERIALS["air"],
        DEFAULT_MATERIALS["water"],
        Medium("glass", Constant(rng.choice([1.4, 1.5, 1.6]))),
        DEFAULT_MATERIALS["crown"],
    )
    elements = []
    cells = [(i, j) for i in range(3) for j in range(3)]
    rng.shuffle(cells)
    for k in range(rng.randint(1, 4)):
        ci, cj = cells[k]
        cx, cy = ci * 4.0 - 4.0, cj * 4.0 - 4.0
        poly = star_polygon(rng, r_min=0.4, r_max=1.4)
        elements.append(
            Element(
                id=f"el{k}",
                shape=poly,
                medium=rng.choice(["water", "glass", "crown"]),
                pose=Pose(Vec2(cx, cy), rng.uniform(0, 2 * math.pi)),
            )
        )
    sources = [
        Source(
            id="torch",
            pose=Pose(Vec2(rng.uniform(-6, 6), rng.uniform(-6, 6)), rng.uniform(0, 2 * math.pi)),
            beam=SingleRay(),
            spectrum=Mono(rng.uniform(380.0, 780.0)),
        )
    ]
    return SceneDoc(
        background="air",
        media=media,
        elements=tuple(elements),
        sources=tuple(sources),
        bounds=Bounds(-8.0, -8.0, 8.0, 8.0),
    )


@pytest.fixture
def rng():
    return random.Random(20260810)
