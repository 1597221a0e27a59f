"""optics2d: deterministic 2D geometric-optics engine and sandbox backend.

Polygonal optical media with movable poses, Snell refraction, total
internal reflection and Cauchy dispersion, traced as polyline routes.
"""

from .geometry import EPS_HIT, Containment, Polygon, Pose, Vec2, apply_pose, normalize
from .optics import (
    DEFAULT_MATERIALS,
    WHITE_TABLE_NM,
    Cauchy,
    Constant,
    Grazing,
    Medium,
    Refracted,
    TotalInternal,
    critical_angle,
    index_at,
    reflect,
    refract_or_reflect,
)
from .scene import (
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
from .tracer import (
    MAX_EVENTS_DEFAULT,
    RayPath,
    Segment,
    nearest_boundary_hit,
    trace_ray,
    trace_source,
)
from .scenarios import (
    glass_plate,
    min_deviation_angle,
    oceanarium,
    pendant_scatter,
    regular_prism,
    spread_sweep,
    visibility_cutoff,
)
from .export import paths_from_json, paths_to_json, scene_from_json, scene_to_json, to_svg

__version__ = "0.1.0"

__all__ = [
    "EPS_HIT",
    "Containment",
    "Polygon",
    "Pose",
    "Vec2",
    "apply_pose",
    "normalize",
    "DEFAULT_MATERIALS",
    "WHITE_TABLE_NM",
    "Cauchy",
    "Constant",
    "Grazing",
    "Medium",
    "Refracted",
    "TotalInternal",
    "critical_angle",
    "index_at",
    "reflect",
    "refract_or_reflect",
    "Bounds",
    "Element",
    "Fan",
    "Mono",
    "SceneDoc",
    "SingleRay",
    "Source",
    "White",
    "emit_rays",
    "resolve_medium",
    "set_pose",
    "validate",
    "MAX_EVENTS_DEFAULT",
    "RayPath",
    "Segment",
    "nearest_boundary_hit",
    "trace_ray",
    "trace_source",
    "glass_plate",
    "min_deviation_angle",
    "oceanarium",
    "pendant_scatter",
    "regular_prism",
    "spread_sweep",
    "visibility_cutoff",
    "paths_from_json",
    "paths_to_json",
    "scene_from_json",
    "scene_to_json",
    "to_svg",
]
