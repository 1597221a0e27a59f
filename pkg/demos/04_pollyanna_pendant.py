"""The Pollyanna pendant: colored spots in absolutely different places.

A flat prism keeps the seven colors side by side (their spread stays within
a dozen degrees). A polygonal pendant is different: near certain
orientations some colors clear an internal reflection that others fail, so
the components leave through different faces entirely. One orientation is
rendered per color group, like cutting the scene per component.
"""

import math
import os

from optics2d import Vec2, regular_prism, to_svg, trace_ray
from optics2d.export import DEFAULT_STYLE
from optics2d.optics import WHITE_TABLE_NM
from optics2d.scenarios import PENDANT_IMPACT_OFFSET, pendant_scatter

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

result = pendant_scatter(6, "flint", (0.0, math.radians(60.0)), math.radians(0.1))
assert result is not None
print(f"hexagonal flint pendant, sunbeam fixed, orientation swept 0..60 deg:")
print(f"  best orientation {math.degrees(result.orientation):.1f} deg, "
      f"separation {math.degrees(result.separation):.1f} deg")
for lam in WHITE_TABLE_NM:
    e = result.exits[lam]
    if e is None:
        print(f"  {int(lam)} nm: trapped (no exit)")
    else:
        print(f"  {int(lam)} nm: face {e.face}, direction {math.degrees(e.direction.angle()):8.2f} deg")

scene = regular_prism(6, 1.0, "flint", result.orientation)
origin = Vec2(-3.0, PENDANT_IMPACT_OFFSET)
groups = {}
for lam in WHITE_TABLE_NM:
    e = result.exits[lam]
    groups.setdefault(None if e is None else e.face, []).append(lam)

for face, lams in groups.items():
    paths = [trace_ray(scene, origin, Vec2(1.0, 0.0), lam) for lam in lams]
    tag = "." if face is None else str(face)
    name = os.path.join(OUT, f"pendant_face_{tag}.svg")
    with open(name, "w") as fh:
        fh.write(to_svg(scene, paths, DEFAULT_STYLE))
    print(f"wrote {name} ({len(lams)} colors)")
