"""Newton's prism: seven colored cones, and when you see fewer than seven.

White light through a triangular crown-glass prism leaves as seven ordered
colors. Lowering the incidence pushes the internal angle at the far face
toward the critical angle; violet hits it first, so the cones vanish one by
one. The sweep writes the full spread-vs-incidence table and curve.
"""

import math
import os

from optics2d import regular_prism, to_svg, trace_source, min_deviation_angle
from optics2d.export import curve_svg, sweep_rows_to_csv
from optics2d.scenarios import refine_exit_cutoff, spread_sweep
from optics2d.optics import DEFAULT_MATERIALS, WHITE_TABLE_NM, index_at

OUT = os.path.join(os.path.dirname(__file__), "out")
os.makedirs(OUT, exist_ok=True)

scene = regular_prism(3, 1.0, "crown")
paths = trace_source(scene, "sunbeam")
with open(os.path.join(OUT, "newton_prism.svg"), "w") as fh:
    fh.write(to_svg(scene, paths))
print("seven colored rays out of the crown prism:", len(paths))

apex = math.radians(60.0)
print("\nper-color exit cutoffs (trace bisection vs closed form, deg):")
for lam in WHITE_TABLE_NM:
    n = index_at(DEFAULT_MATERIALS["crown"], lam)
    closed = math.asin(n * math.sin(apex - math.asin(1.0 / n)))
    refined = refine_exit_cutoff(scene, "crown", lam, math.radians(27), math.radians(32))
    print(f"  {int(lam)} nm: n={n:.6f}  traced {math.degrees(refined):9.5f}  closed {math.degrees(closed):9.5f}")

rows = spread_sweep(scene, "crown", (math.radians(28), math.radians(60)), math.radians(0.1))
with open(os.path.join(OUT, "crown_spread.csv"), "w") as fh:
    fh.write(sweep_rows_to_csv(rows))
pts = [(math.degrees(r.incidence), math.degrees(r.spread)) for r in rows if r.spread is not None]
with open(os.path.join(OUT, "crown_spread.svg"), "w") as fh:
    fh.write(curve_svg(pts))

partial = [r for r in rows if 0 < r.cones < 7]
print(f"\nfewer than seven cones between {math.degrees(partial[0].incidence):.1f} and "
      f"{math.degrees(partial[-1].incidence):.1f} deg of incidence")

d60 = min_deviation_angle(apex, 1.5)
print(f"minimum deviation for A=60 deg, n=1.5: {math.degrees(d60):.3f} deg (closed form)")
print(f"\nwrote {OUT}/newton_prism.svg, crown_spread.csv, crown_spread.svg")
