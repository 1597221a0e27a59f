"""Stateless HTTP facade over the scenario builders and the tracer.

Every trace request carries its scene inline, so the service holds no
session state and identical requests always produce identical bodies
(the elapsed-time measurement travels in the X-Elapsed-Ms header to keep
bodies byte-deterministic). Bodies reuse the scene and trace JSON formats
verbatim.
"""

from __future__ import annotations

import json
import math
import time
from typing import Optional

from fastapi import FastAPI, Request
from fastapi.responses import PlainTextResponse, Response

from .errors import Optics2dError, ParseError, UnsupportedVersion
from .export import paths_to_obj, scene_from_obj, scene_to_json
from .scene import validate
from .scenarios import glass_plate, oceanarium, regular_prism
from .tracer import MAX_EVENTS_DEFAULT, trace_source

SCENARIO_DESCRIPTORS = [
    {
        "name": "oceanarium",
        "params": [
            {"name": "wall_thickness", "type": "float", "default": 0.1, "min": 1e-6},
            {"name": "tank_width", "type": "float", "default": 6.0, "min": 1e-6},
            {"name": "tank_height", "type": "float", "default": 3.0, "min": 1e-6},
            {"name": "water_level_fraction", "type": "float", "default": 0.5, "min": 1e-9, "max": 1.0},
        ],
    },
    {
        "name": "glass_plate",
        "params": [
            {"name": "thickness", "type": "float", "default": 1.0, "min": 1e-6},
            {"name": "n", "type": "float", "default": 1.5, "min": 1.0},
        ],
    },
    {
        "name": "regular_prism",
        "params": [
            {"name": "sides", "type": "int", "default": 3, "min": 3},
            {"name": "circumradius", "type": "float", "default": 1.0, "min": 1e-6},
            {"name": "material", "type": "str", "default": "crown",
             "choices": ["water", "glass", "crown", "flint"]},
            {"name": "orientation", "type": "float", "default": 0.0},
        ],
    },
]

_BUILDERS = {
    "oceanarium": oceanarium,
    "glass_plate": glass_plate,
    "regular_prism": regular_prism,
}


def _json_response(payload_text: str, status_code: int = 200, headers: Optional[dict] = None) -> Response:
    # Bodies are assembled as strings so byte-for-byte determinism is
    # independent of any framework serializer.
    return Response(content=payload_text, status_code=status_code,
                    media_type="application/json", headers=headers)


def _error_body(detail) -> str:
    return json.dumps({"detail": detail}, indent=2) + "\n"


def _check_params(descriptor: dict, params: dict) -> list[dict]:
    errors = []
    known = {p["name"]: p for p in descriptor["params"]}
    for key in params:
        if key not in known:
            errors.append({"param": key, "message": "unknown parameter"})
    for name, spec in known.items():
        if name not in params:
            continue
        value = params[name]
        if spec["type"] == "int" and not isinstance(value, int):
            errors.append({"param": name, "message": "must be an integer"})
            continue
        if spec["type"] == "float" and not isinstance(value, (int, float)):
            errors.append({"param": name, "message": "must be a number"})
            continue
        if spec["type"] == "str" and not isinstance(value, str):
            errors.append({"param": name, "message": "must be a string"})
            continue
        if "min" in spec and isinstance(value, (int, float)) and value < spec["min"]:
            errors.append({"param": name, "message": f"must be >= {spec['min']}"})
        if "max" in spec and isinstance(value, (int, float)) and value > spec["max"]:
            errors.append({"param": name, "message": f"must be <= {spec['max']}"})
        if "choices" in spec and value not in spec["choices"]:
            errors.append({"param": name, "message": f"must be one of {spec['choices']}"})
    return errors


def create_app(static_dir: Optional[str] = None, default_max_events: int = MAX_EVENTS_DEFAULT) -> FastAPI:
    app = FastAPI(title="optics2d trace service", docs_url=None, redoc_url=None)

    @app.get("/healthz")
    def healthz():
        return PlainTextResponse("ok")

    @app.get("/api/scenarios")
    def list_scenarios():
        return _json_response(json.dumps(SCENARIO_DESCRIPTORS, indent=2) + "\n")

    @app.post("/api/scenarios/{name}")
    async def instantiate(name: str, request: Request):
        descriptor = next((d for d in SCENARIO_DESCRIPTORS if d["name"] == name), None)
        if descriptor is None:
            return _json_response(_error_body(f"unknown scenario '{name}'"), 404)
        raw = await request.body()
        if raw.strip():
            try:
                params = json.loads(raw)
            except json.JSONDecodeError as exc:
                return _json_response(_error_body(f"malformed JSON: {exc.msg}"), 400)
            if not isinstance(params, dict):
                return _json_response(_error_body("params body must be a JSON object"), 400)
        else:
            params = {}
        errors = _check_params(descriptor, params)
        if errors:
            return _json_response(_error_body(errors), 422)
        kwargs = dict(params)
        if name == "regular_prism" and "orientation" in kwargs:
            kwargs["orientation"] = math.radians(kwargs["orientation"])
        try:
            scene = _BUILDERS[name](**kwargs)
        except (Optics2dError, ValueError) as exc:
            return _json_response(_error_body([{"param": "", "message": str(exc)}]), 422)
        return _json_response(scene_to_json(scene))

    @app.post("/api/trace")
    async def trace(request: Request):
        raw = await request.body()
        try:
            body = json.loads(raw)
        except json.JSONDecodeError as exc:
            return _json_response(_error_body(f"malformed JSON: {exc.msg}"), 400)
        if not isinstance(body, dict) or "scene" not in body:
            return _json_response(_error_body("body must be {scene, max_events?}"), 400)
        unknown = set(body) - {"scene", "max_events"}
        if unknown:
            return _json_response(_error_body(f"unknown fields {sorted(unknown)}"), 400)
        max_events = body.get("max_events", default_max_events)
        if not isinstance(max_events, int) or max_events < 1:
            return _json_response(_error_body("max_events must be a positive integer"), 400)
        try:
            scene = scene_from_obj(body["scene"])
        except (ParseError, UnsupportedVersion) as exc:
            return _json_response(_error_body(str(exc)), 400)
        violations = validate(scene)
        if violations:
            detail = [
                {"kind": v.kind, "ids": list(v.ids), "message": v.message} for v in violations
            ]
            return _json_response(_error_body(detail), 422)
        started = time.perf_counter()
        paths = []
        for src in scene.sources:
            paths.extend(trace_source(scene, src.id, max_events))
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        body_text = json.dumps(paths_to_obj(paths), indent=2) + "\n"
        return _json_response(body_text, headers={"X-Elapsed-Ms": f"{elapsed_ms:.3f}"})

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app
