"""Record real service responses as test fixtures for the UI suite.

Regenerate after engine changes:  python3 frontend/scripts/record_fixtures.py
"""

import dataclasses
import json
import math
import os

from optics2d.export import paths_to_obj, scene_to_obj
from optics2d.geometry import Pose, Vec2
from optics2d.scene import White, set_pose
from optics2d.scenarios import oceanarium
from optics2d.service import SCENARIO_DESCRIPTORS
from optics2d.tracer import trace_source

OUT = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures")
os.makedirs(OUT, exist_ok=True)

EYE = Vec2(0.3, 0.75)


def dump(name, obj):
    with open(os.path.join(OUT, name), "w", encoding="utf-8") as fh:
        json.dump(obj, fh, indent=2)
        fh.write("\n")


scene = oceanarium()
dump("scenarios.json", SCENARIO_DESCRIPTORS)
dump("scene_default.json", scene_to_obj(scene))
dump("trace_default.json", paths_to_obj(trace_source(scene, "flashlight")))

# Flashlight rotations on both sides of the underwater visibility cutoff
# (incidence = 180 deg - heading; asin(1/1.33) = 48.75 deg).
for label, heading_deg in (("44", 136.0), ("52", 128.0)):
    moved = set_pose(scene, "flashlight", Pose(EYE, math.radians(heading_deg)))
    dump(f"scene_{label}.json", scene_to_obj(moved))
    dump(f"trace_{label}.json", paths_to_obj(trace_source(moved, "flashlight")))

# White-light variant of the default scene (spectrum toggle target).
white = dataclasses.replace(
    scene,
    sources=tuple(
        dataclasses.replace(s, spectrum=White()) if s.id == "flashlight" else s
        for s in scene.sources
    ),
)
dump("scene_white.json", scene_to_obj(white))
dump("trace_white.json", paths_to_obj(trace_source(white, "flashlight")))

print(f"fixtures written to {os.path.normpath(OUT)}")
