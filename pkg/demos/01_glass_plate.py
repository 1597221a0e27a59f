"""Looking through a window at an angle: the picture is shifted, not bent.

A ray through a parallel-faced plate leaves parallel to how it entered,
whatever the glass index; only a lateral offset remains. This script traces
the same ray through plates of different indices and prints the offsets,
then renders the default plate scene.
"""

import math
import os

from optics2d import Vec2, glass_plate, normalize, to_svg, trace_ray, trace_source
from optics2d.export import scene_to_json

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

incidence = math.radians(30.0)
d = Vec2.from_angle(incidence)

print("30-degree ray through a 1 m plate:")
print(f"{'n':>5} {'exit parallel?':>15} {'lateral offset (m)':>20}")
for n in (1.1, 1.3, 1.5, 1.7, 1.9):
    scene = glass_plate(1.0, n)
    path = trace_ray(scene, Vec2(-1.0, 0.0), d, 550.0)
    out_dir = normalize(path.segments[-1].end - path.segments[-1].start)
    parallel = abs(out_dir.x - d.x) < 1e-9 and abs(out_dir.y - d.y) < 1e-9
    # perpendicular distance between entry and exit lines
    offset = abs((path.segments[-1].start - path.segments[0].end).cross(d))
    print(f"{n:5.2f} {str(parallel):>15} {offset:20.6f}")

scene = glass_plate()
paths = trace_source(scene, "beam")
with open(os.path.join(OUT, "glass_plate.svg"), "w") as fh:
    fh.write(to_svg(scene, paths))
with open(os.path.join(OUT, "glass_plate.json"), "w") as fh:
    fh.write(scene_to_json(scene))
print(f"\nwrote {OUT}/glass_plate.svg")
