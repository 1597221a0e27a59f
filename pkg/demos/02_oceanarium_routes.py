"""The oceanarium: one movable flashlight, six boundary variants, and the
angle beyond which a creature under water cannot see the visitors.

Rotating the underwater flashlight sweeps through qualitatively different
ray routes: straight out through the wall, total internal reflection at the
outer glass face returning the view into the water, and cascades bouncing
off the surface. The visibility cutoff lands at asin(1/1.33) regardless of
the glass index.
"""

import math
import os

from optics2d import Pose, Vec2, oceanarium, set_pose, to_svg, trace_ray, trace_source, visibility_cutoff
from optics2d.scenarios import media_pairs, oceanarium_pair_probes
from optics2d import Constant, Medium

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

scene = oceanarium()
eye = Vec2(0.3, 0.75)

print("route families while rotating the flashlight (eye under water):")
seen = {}
for deg in range(0, 360, 2):
    path = trace_ray(scene, eye, Vec2.from_angle(math.radians(deg)), 550.0)
    key = tuple(path.events) + (path.terminal,)
    seen.setdefault(key, deg)
for sig, deg in sorted(seen.items(), key=lambda kv: kv[1]):
    print(f"  first at {deg:3d} deg: {' -> '.join(sig)}")

print("\nsix boundary variants reached by moving the flashlight:")
pairs = set()
for pose in oceanarium_pair_probes(scene):
    moved = set_pose(scene, "flashlight", pose)
    pairs |= media_pairs(trace_source(moved, "flashlight"))
for p in sorted(pairs):
    print(f"  {p[0]} -> {p[1]}")

print("\nvisibility cutoff vs glass index (the glass cancels out):")
for n_glass in (1.4, 1.5, 1.6, 1.7):
    sc = oceanarium(media={"glass": Medium("glass", Constant(n_glass))})
    cut = visibility_cutoff(sc, eye)
    print(f"  glass n={n_glass}: cutoff {math.degrees(cut):.3f} deg")
print(f"  closed form asin(1/1.33) = {math.degrees(math.asin(1 / 1.33)):.3f} deg")

# render the three paradigm routes from the sweep
for name, deg in [("exit", 150), ("tir_return", 121), ("double_tir", 22)]:
    moved = set_pose(scene, "flashlight", Pose(eye, math.radians(deg)))
    paths = trace_source(moved, "flashlight")
    with open(os.path.join(OUT, f"oceanarium_{name}.svg"), "w") as fh:
        fh.write(to_svg(moved, paths))
print(f"\nwrote {OUT}/oceanarium_*.svg")
