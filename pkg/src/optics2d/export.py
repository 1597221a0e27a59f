"""Deterministic serialization: scene/trace JSON, sweep CSV, and SVG figures.

All numbers are quantized to 12 significant decimal digits before emission,
which keeps golden files byte-stable across platforms without resorting to
hex floats. Serialization is the single quantization point; values already
at 12-digit precision round-trip exactly.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .errors import ParseError, UnsupportedVersion
from .geometry import Polygon, Pose, Vec2
from .optics import WHITE_TABLE_NM, Cauchy, Constant, Medium
from .scene import Bounds, Element, Fan, Mono, SceneDoc, SingleRay, Source, White
from .tracer import RayPath, Segment, TERMINAL_EVENTS, EV_GRAZING

SCENE_VERSION = 1
TRACE_VERSION = 1


def q12(x: float) -> float:
    """Quantize to 12 significant digits (the serialization precision)."""
    return float(format(float(x), ".12g"))


# ---------------------------------------------------------------------------
# scene document JSON

def scene_to_obj(scene: SceneDoc) -> dict:
    def pose_obj(p: Pose) -> dict:
        return {"x": q12(p.position.x), "y": q12(p.position.y), "rot_rad": q12(p.rotation)}

    media = []
    for m in scene.media:
        if isinstance(m.model, Constant):
            model = {"kind": "constant", "n": q12(m.model.n)}
        else:
            model = {"kind": "cauchy", "a": q12(m.model.a), "b_nm2": q12(m.model.b_nm2)}
        media.append({"name": m.name, "model": model})
    elements = [
        {
            "id": e.id,
            "medium": e.medium,
            "pose": pose_obj(e.pose),
            "vertices": [[q12(v.x), q12(v.y)] for v in e.shape.vertices],
        }
        for e in scene.elements
    ]
    sources = []
    for s in scene.sources:
        if isinstance(s.beam, SingleRay):
            beam = {"kind": "single"}
        else:
            beam = {"kind": "fan", "count": s.beam.count, "spread_rad": q12(s.beam.spread_rad)}
        if isinstance(s.spectrum, Mono):
            spectrum = {"kind": "mono", "lambda_nm": q12(s.spectrum.lambda_nm)}
        else:
            spectrum = {"kind": "white"}
        sources.append({"id": s.id, "pose": pose_obj(s.pose), "beam": beam, "spectrum": spectrum})
    return {
        "version": SCENE_VERSION,
        "background": scene.background,
        "media": media,
        "elements": elements,
        "sources": sources,
        "bounds": {
            "x_min": q12(scene.bounds.x_min),
            "y_min": q12(scene.bounds.y_min),
            "x_max": q12(scene.bounds.x_max),
            "y_max": q12(scene.bounds.y_max),
        },
    }


def scene_to_json(scene: SceneDoc) -> str:
    return json.dumps(scene_to_obj(scene), indent=2) + "\n"


def _require(obj: dict, keys: set[str], where: str) -> None:
    if not isinstance(obj, dict):
        raise ParseError(f"expected object, got {type(obj).__name__}", where)
    missing = keys - obj.keys()
    if missing:
        raise ParseError(f"missing fields {sorted(missing)}", where)
    unknown = obj.keys() - keys
    if unknown:
        raise ParseError(f"unknown fields {sorted(unknown)}", where)


def _num(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"expected number, got {value!r}", where)
    return float(value)


def _parse_pose(obj, where: str) -> Pose:
    _require(obj, {"x", "y", "rot_rad"}, where)
    return Pose(Vec2(_num(obj["x"], where), _num(obj["y"], where)), _num(obj["rot_rad"], where))


def scene_from_obj(obj) -> SceneDoc:
    _require(obj, {"version", "background", "media", "elements", "sources", "bounds"}, "scene")
    if obj["version"] != SCENE_VERSION:
        raise UnsupportedVersion(f"scene version {obj['version']!r}, expected {SCENE_VERSION}")
    media = []
    for i, m in enumerate(obj["media"]):
        where = f"media[{i}]"
        _require(m, {"name", "model"}, where)
        model_obj = m["model"]
        if not isinstance(model_obj, dict) or "kind" not in model_obj:
            raise ParseError("model needs a 'kind'", where)
        if model_obj["kind"] == "constant":
            _require(model_obj, {"kind", "n"}, where)
            model = Constant(_num(model_obj["n"], where))
        elif model_obj["kind"] == "cauchy":
            _require(model_obj, {"kind", "a", "b_nm2"}, where)
            model = Cauchy(_num(model_obj["a"], where), _num(model_obj["b_nm2"], where))
        else:
            raise ParseError(f"unknown model kind {model_obj['kind']!r}", where)
        media.append(Medium(str(m["name"]), model))
    elements = []
    for i, e in enumerate(obj["elements"]):
        where = f"elements[{i}]"
        _require(e, {"id", "medium", "pose", "vertices"}, where)
        verts = []
        for j, xy in enumerate(e["vertices"]):
            if not (isinstance(xy, list) and len(xy) == 2):
                raise ParseError("vertex must be an [x, y] pair", f"{where}.vertices[{j}]")
            verts.append(Vec2(_num(xy[0], where), _num(xy[1], where)))
        elements.append(
            Element(str(e["id"]), Polygon(verts), str(e["medium"]), _parse_pose(e["pose"], where))
        )
    sources = []
    for i, s in enumerate(obj["sources"]):
        where = f"sources[{i}]"
        _require(s, {"id", "pose", "beam", "spectrum"}, where)
        beam_obj = s["beam"]
        if not isinstance(beam_obj, dict) or "kind" not in beam_obj:
            raise ParseError("beam needs a 'kind'", where)
        if beam_obj["kind"] == "single":
            _require(beam_obj, {"kind"}, where)
            beam = SingleRay()
        elif beam_obj["kind"] == "fan":
            _require(beam_obj, {"kind", "count", "spread_rad"}, where)
            if not isinstance(beam_obj["count"], int):
                raise ParseError("fan count must be an integer", where)
            beam = Fan(beam_obj["count"], _num(beam_obj["spread_rad"], where))
        else:
            raise ParseError(f"unknown beam kind {beam_obj['kind']!r}", where)
        spec_obj = s["spectrum"]
        if not isinstance(spec_obj, dict) or "kind" not in spec_obj:
            raise ParseError("spectrum needs a 'kind'", where)
        if spec_obj["kind"] == "mono":
            _require(spec_obj, {"kind", "lambda_nm"}, where)
            spectrum = Mono(_num(spec_obj["lambda_nm"], where))
        elif spec_obj["kind"] == "white":
            _require(spec_obj, {"kind"}, where)
            spectrum = White()
        else:
            raise ParseError(f"unknown spectrum kind {spec_obj['kind']!r}", where)
        sources.append(Source(str(s["id"]), _parse_pose(s["pose"], where), beam, spectrum))
    b = obj["bounds"]
    _require(b, {"x_min", "y_min", "x_max", "y_max"}, "bounds")
    bounds = Bounds(
        _num(b["x_min"], "bounds"),
        _num(b["y_min"], "bounds"),
        _num(b["x_max"], "bounds"),
        _num(b["y_max"], "bounds"),
    )
    return SceneDoc(
        background=str(obj["background"]),
        media=tuple(media),
        elements=tuple(elements),
        sources=tuple(sources),
        bounds=bounds,
    )


def scene_from_json(text: str) -> SceneDoc:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from exc
    return scene_from_obj(obj)


# ---------------------------------------------------------------------------
# trace output JSON

def paths_to_obj(paths: list[RayPath]) -> dict:
    out = []
    for p in paths:
        entry = {
            "lambda_nm": q12(p.lambda_nm),
            "segments": [
                {
                    "x0": q12(s.start.x),
                    "y0": q12(s.start.y),
                    "x1": q12(s.end.x),
                    "y1": q12(s.end.y),
                    "medium": s.medium,
                }
                for s in p.segments
            ],
            "events": list(p.events),
            "terminal": p.terminal,
        }
        if p.terminal == EV_GRAZING and p.grazing_dir is not None:
            entry["grazing_dir"] = [q12(p.grazing_dir.x), q12(p.grazing_dir.y)]
        out.append(entry)
    return {"version": TRACE_VERSION, "paths": out}


def paths_to_json(paths: list[RayPath]) -> str:
    return json.dumps(paths_to_obj(paths), indent=2) + "\n"


def paths_from_obj(obj) -> list[RayPath]:
    _require(obj, {"version", "paths"}, "trace")
    if obj["version"] != TRACE_VERSION:
        raise UnsupportedVersion(f"trace version {obj['version']!r}, expected {TRACE_VERSION}")
    paths = []
    for i, p in enumerate(obj["paths"]):
        where = f"paths[{i}]"
        keys = {"lambda_nm", "segments", "events", "terminal"}
        grazing_dir = None
        if isinstance(p, dict) and "grazing_dir" in p:
            keys.add("grazing_dir")
        _require(p, keys, where)
        segments = []
        for j, s in enumerate(p["segments"]):
            sw = f"{where}.segments[{j}]"
            _require(s, {"x0", "y0", "x1", "y1", "medium"}, sw)
            segments.append(
                Segment(
                    Vec2(_num(s["x0"], sw), _num(s["y0"], sw)),
                    Vec2(_num(s["x1"], sw), _num(s["y1"], sw)),
                    str(s["medium"]),
                )
            )
        if p["terminal"] not in TERMINAL_EVENTS:
            raise ParseError(f"unknown terminal {p['terminal']!r}", where)
        if "grazing_dir" in p:
            g = p["grazing_dir"]
            if not (isinstance(g, list) and len(g) == 2):
                raise ParseError("grazing_dir must be an [x, y] pair", where)
            grazing_dir = Vec2(_num(g[0], where), _num(g[1], where))
        paths.append(
            RayPath(
                lambda_nm=_num(p["lambda_nm"], where),
                segments=tuple(segments),
                events=tuple(str(e) for e in p["events"]),
                terminal=str(p["terminal"]),
                grazing_dir=grazing_dir,
            )
        )
    return paths


def paths_from_json(text: str) -> list[RayPath]:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno}, column {exc.colno}") from exc
    return paths_from_obj(obj)


# ---------------------------------------------------------------------------
# sweep CSV

SWEEP_CSV_HEADER = "incidence_deg,exit_650,exit_610,exit_580,exit_550,exit_470,exit_440,exit_410,spread_deg,cones"


def sweep_rows_to_csv(rows) -> str:
    """CSV for spread-sweep rows; angles in degrees, empty cell = no exit."""
    lines = [SWEEP_CSV_HEADER]
    for r in rows:
        cells = [format(q12(math.degrees(r.incidence)), ".12g")]
        for lam in WHITE_TABLE_NM:
            ang = r.exit_angles.get(lam)
            cells.append("" if ang is None else format(q12(math.degrees(ang)), ".12g"))
        cells.append("" if r.spread is None else format(q12(math.degrees(r.spread)), ".12g"))
        cells.append(str(r.cones))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# SVG

# Conventional seven-color table, red through violet.
WAVELENGTH_COLORS: dict[float, str] = {
    650.0: "#ff0000",
    610.0: "#ff7f00",
    580.0: "#ffd700",
    550.0: "#00c000",
    470.0: "#0000ff",
    440.0: "#4b0082",
    410.0: "#8b00ff",
}

MEDIUM_FILLS: dict[str, str] = {
    "air": "none",
    "water": "#bfe3f7",
    "glass": "#d7e4ee",
    "crown": "#d9e8dc",
    "flint": "#e4dcee",
}


@dataclass(frozen=True)
class StyleMap:
    """Colors and stroke widths for rendering; total over the white table."""

    wavelength_colors: dict[float, str] = field(default_factory=lambda: dict(WAVELENGTH_COLORS))
    medium_fills: dict[str, str] = field(default_factory=lambda: dict(MEDIUM_FILLS))
    ray_width: float = 0.02
    outline_width: float = 0.01

    def color_for(self, lambda_nm: float) -> str:
        exact = self.wavelength_colors.get(lambda_nm)
        if exact is not None:
            return exact
        nearest = min(self.wavelength_colors, key=lambda k: abs(k - lambda_nm))
        return self.wavelength_colors[nearest]

    def fill_for(self, medium: str) -> str:
        return self.medium_fills.get(medium, "#dddddd")


DEFAULT_STYLE = StyleMap()


def _n(x: float) -> str:
    return format(q12(x), ".12g")


def to_svg(scene: SceneDoc, paths: list[RayPath], style: StyleMap = DEFAULT_STYLE) -> str:
    """SVG 1.1 figure: one filled polygon per element, one polyline per path.

    Scene y points up; the flip to SVG's y-down happens once at the viewport
    group, so all emitted coordinates are plain scene coordinates.
    """
    b = scene.bounds
    w, h = b.x_max - b.x_min, b.y_max - b.y_min
    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'viewBox="{_n(b.x_min)} {_n(-b.y_max)} {_n(w)} {_n(h)}">',
        '<g transform="scale(1,-1)">',
        f'<rect x="{_n(b.x_min)}" y="{_n(b.y_min)}" width="{_n(w)}" height="{_n(h)}" '
        f'fill="#ffffff" stroke="none"/>',
    ]
    for el in scene.elements:
        pts = " ".join(f"{_n(v.x)},{_n(v.y)}" for v in el.world_shape().vertices)
        lines.append(
            f'<polygon points="{pts}" fill="{style.fill_for(el.medium)}" '
            f'stroke="#555555" stroke-width="{_n(style.outline_width)}"/>'
        )
    for p in paths:
        if not p.segments:
            continue
        pts = [f"{_n(p.segments[0].start.x)},{_n(p.segments[0].start.y)}"]
        pts += [f"{_n(s.end.x)},{_n(s.end.y)}" for s in p.segments]
        lines.append(
            f'<polyline points="{" ".join(pts)}" fill="none" '
            f'stroke="{style.color_for(p.lambda_nm)}" stroke-width="{_n(style.ray_width)}"/>'
        )
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def curve_svg(
    points: list[tuple[float, float]],
    width: float = 640.0,
    height: float = 400.0,
) -> str:
    """Minimal deterministic line chart (used for sweep curves).

    Sticks to the same rect/polyline subset as the scene figures.
    """
    if not points:
        return '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 640 400"/>\n'
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    x0, x1 = min(xs), max(xs)
    y0, y1 = min(ys), max(ys)
    pad = 40.0
    sx = (width - 2 * pad) / (x1 - x0 if x1 > x0 else 1.0)
    sy = (height - 2 * pad) / (y1 - y0 if y1 > y0 else 1.0)

    def px(x):
        return _n(pad + (x - x0) * sx)

    def py(y):
        return _n(height - pad - (y - y0) * sy)

    pts = " ".join(f"{px(x)},{py(y)}" for x, y in points)
    return "\n".join(
        [
            '<?xml version="1.0" encoding="UTF-8"?>',
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="0 0 {_n(width)} {_n(height)}">',
            f'<rect x="0" y="0" width="{_n(width)}" height="{_n(height)}" fill="#ffffff" stroke="none"/>',
            f'<polyline points="{_n(pad)},{_n(pad)} {_n(pad)},{_n(height - pad)} {_n(width - pad)},{_n(height - pad)}" '
            'fill="none" stroke="#000000" stroke-width="1"/>',
            f'<polyline points="{pts}" fill="none" stroke="#cc0000" stroke-width="1.5"/>',
            "</svg>",
        ]
    ) + "\n"
