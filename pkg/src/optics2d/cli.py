"""Batch entry point: scenario generation, tracing, sweeps, rendering, serving.

Angles are degrees on the command line and radians internally. Exit codes:
0 success, 1 validation/physics error, 2 usage error. Diagnostics go to
stderr; outputs only to files named by flags.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from .errors import Optics2dError
from .export import (
    curve_svg,
    paths_from_json,
    paths_to_json,
    q12,
    scene_from_json,
    scene_to_json,
    sweep_rows_to_csv,
    to_svg,
)
from .geometry import Vec2
from .optics import WHITE_TABLE_NM, Constant, Medium
from .scenarios import (
    SCENARIO_BUILDERS,
    glass_plate,
    oceanarium,
    pendant_scatter,
    regular_prism,
    spread_sweep,
    visibility_cutoff,
)
from .tracer import MAX_EVENTS_DEFAULT, trace_source

MAX_EVENTS_ENV = "OPTICS_MAX_EVENTS"


def _default_max_events() -> int:
    raw = os.environ.get(MAX_EVENTS_ENV)
    if raw is None:
        return MAX_EVENTS_DEFAULT
    try:
        value = int(raw)
    except ValueError:
        raise Optics2dError(f"{MAX_EVENTS_ENV} must be an integer, got {raw!r}")
    if value < 1:
        raise Optics2dError(f"{MAX_EVENTS_ENV} must be >= 1, got {value}")
    return value


def _write(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="optics2d", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_scn = sub.add_parser("scenario", help="emit a canonical scene document")
    p_scn.add_argument("name", choices=sorted(SCENARIO_BUILDERS))
    p_scn.add_argument("--out", required=True)
    p_scn.add_argument("--wall-thickness", type=float, default=0.1)
    p_scn.add_argument("--tank-width", type=float, default=6.0)
    p_scn.add_argument("--tank-height", type=float, default=3.0)
    p_scn.add_argument("--water-level", type=float, default=0.5)
    p_scn.add_argument("--thickness", type=float, default=1.0)
    p_scn.add_argument("--n", type=float, default=1.5)
    p_scn.add_argument("--sides", type=int, default=3)
    p_scn.add_argument("--circumradius", type=float, default=1.0)
    p_scn.add_argument("--material", default="crown")
    p_scn.add_argument("--orientation", type=float, default=0.0, help="degrees")

    p_tr = sub.add_parser("trace", help="trace every source in a scene")
    p_tr.add_argument("--scene", required=True)
    p_tr.add_argument("--max-events", type=int, default=None)
    p_tr.add_argument("--out", required=True)
    p_tr.add_argument("--svg", default=None)

    p_sw = sub.add_parser("sweep", help="run a sweep analysis, emit CSV")
    p_sw.add_argument("kind", choices=["prism-spread", "visibility", "pendant-scatter"])
    p_sw.add_argument("--out", required=True)
    p_sw.add_argument("--material", default="flint")
    p_sw.add_argument("--sides", type=int, default=3)
    p_sw.add_argument("--circumradius", type=float, default=1.0)
    p_sw.add_argument("--from", dest="from_deg", type=float, default=None, help="degrees")
    p_sw.add_argument("--to", dest="to_deg", type=float, default=None, help="degrees")
    p_sw.add_argument("--step", type=float, default=0.1, help="degrees")
    p_sw.add_argument("--glass-n", dest="glass_n", type=float, action="append", default=None,
                      help="visibility sweep: glass index (repeatable)")
    p_sw.add_argument("--svg", default=None, help="prism-spread: also plot spread vs incidence")

    p_rd = sub.add_parser("render", help="render a scene plus traced paths to SVG")
    p_rd.add_argument("--scene", required=True)
    p_rd.add_argument("--paths", required=True)
    p_rd.add_argument("--out", required=True)

    p_sv = sub.add_parser("serve", help="start the stateless trace service")
    p_sv.add_argument("--port", type=int, default=8000)
    p_sv.add_argument("--host", default="127.0.0.1")
    p_sv.add_argument("--static", default=None, help="directory served at /")
    return parser


def _cmd_scenario(args) -> int:
    name = args.name
    if name == "oceanarium":
        scene = oceanarium(args.wall_thickness, args.tank_width, args.tank_height, args.water_level)
    elif name == "glass_plate":
        scene = glass_plate(args.thickness, args.n)
    else:
        scene = regular_prism(
            args.sides, args.circumradius, args.material, math.radians(args.orientation)
        )
    _write(args.out, scene_to_json(scene))
    return 0


def _cmd_trace(args) -> int:
    scene = scene_from_json(_read(args.scene))
    max_events = args.max_events if args.max_events is not None else _default_max_events()
    paths = []
    for src in scene.sources:
        paths.extend(trace_source(scene, src.id, max_events))
    _write(args.out, paths_to_json(paths))
    if args.svg:
        _write(args.svg, to_svg(scene, paths))
    return 0


def _visibility_csv(glass_indices: list[float]) -> str:
    lines = ["glass_n,cutoff_deg"]
    for gn in glass_indices:
        scene = oceanarium(media={"glass": Medium("glass", Constant(gn))})
        eye = Vec2(0.3, 0.75)
        cut = visibility_cutoff(scene, eye)
        cell = "" if cut is None else format(q12(math.degrees(cut)), ".12g")
        lines.append(f"{format(q12(gn), '.12g')},{cell}")
    return "\n".join(lines) + "\n"


def _pendant_csv(result) -> str:
    header = ["orientation_deg"]
    for lam in WHITE_TABLE_NM:
        header.append(f"face_{int(lam)}")
        header.append(f"dir_{int(lam)}_deg")
    header.append("separation_deg")
    lines = [",".join(header)]
    if result is not None:
        cells = [format(q12(math.degrees(result.orientation)), ".12g")]
        for lam in WHITE_TABLE_NM:
            e = result.exits.get(lam)
            if e is None:
                cells += ["", ""]
            else:
                cells += [str(e.face), format(q12(math.degrees(e.direction.angle())), ".12g")]
        cells.append(format(q12(math.degrees(result.separation)), ".12g"))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def _cmd_sweep(args) -> int:
    if args.kind == "prism-spread":
        lo = 30.0 if args.from_deg is None else args.from_deg
        hi = 85.0 if args.to_deg is None else args.to_deg
        scene = regular_prism(args.sides, args.circumradius, args.material)
        rows = spread_sweep(
            scene, args.material, (math.radians(lo), math.radians(hi)), math.radians(args.step)
        )
        _write(args.out, sweep_rows_to_csv(rows))
        if args.svg:
            pts = [
                (math.degrees(r.incidence), math.degrees(r.spread))
                for r in rows
                if r.spread is not None
            ]
            _write(args.svg, curve_svg(pts))
    elif args.kind == "visibility":
        indices = args.glass_n if args.glass_n else [1.4, 1.5, 1.6, 1.7]
        _write(args.out, _visibility_csv(indices))
    else:
        lo = 0.0 if args.from_deg is None else args.from_deg
        hi = 60.0 if args.to_deg is None else args.to_deg
        result = pendant_scatter(
            args.sides if args.sides >= 4 else 6,
            args.material,
            (math.radians(lo), math.radians(hi)),
            math.radians(args.step),
        )
        _write(args.out, _pendant_csv(result))
    return 0


def _cmd_render(args) -> int:
    scene = scene_from_json(_read(args.scene))
    paths = paths_from_json(_read(args.paths))
    _write(args.out, to_svg(scene, paths))
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    app = create_app(static_dir=args.static, default_max_events=_default_max_events())
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def run(argv: list[str]) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 2 on usage errors and 0 for --help
        return int(exc.code or 0)
    handlers = {
        "scenario": _cmd_scenario,
        "trace": _cmd_trace,
        "sweep": _cmd_sweep,
        "render": _cmd_render,
        "serve": _cmd_serve,
    }
    try:
        return handlers[args.command](args)
    except (Optics2dError, ValueError, OSError) as exc:
        print(f"optics2d: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
