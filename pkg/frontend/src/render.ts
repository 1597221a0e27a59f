// Pure scene/path rendering to a display list. The browser paints the list
// onto a canvas; tests assert on it directly. Every path vertex drawn here
// is the camera transform of a vertex received from the service, nothing
// is recomputed client-side.

import type { PathJson, SceneJson, SourceJson } from "./types.js";
import { colorFor, fillFor } from "./style.js";

export interface Camera {
  scale: number; // pixels per scene unit
  offsetX: number; // screen x of scene origin
  offsetY: number; // screen y of scene origin
}

export interface Pt {
  x: number;
  y: number;
}

export type Shape =
  | { kind: "polygon"; points: Pt[]; fill: string; stroke: string; width: number; id: string }
  | { kind: "polyline"; points: Pt[]; stroke: string; width: number; lambda: number }
  | { kind: "circle"; center: Pt; radius: number; fill: string; stroke: string; id: string }
  | { kind: "line"; from: Pt; to: Pt; stroke: string; width: number };

export function fitCamera(scene: SceneJson, viewW: number, viewH: number): Camera {
  const b = scene.bounds;
  const w = b.x_max - b.x_min;
  const h = b.y_max - b.y_min;
  const scale = Math.min(viewW / w, viewH / h) * 0.95;
  // center the bounds; scene y points up, canvas y points down
  return {
    scale,
    offsetX: viewW / 2 - scale * (b.x_min + w / 2),
    offsetY: viewH / 2 + scale * (b.y_min + h / 2),
  };
}

export function toScreen(cam: Camera, x: number, y: number): Pt {
  return { x: cam.offsetX + cam.scale * x, y: cam.offsetY - cam.scale * y };
}

export function toWorld(cam: Camera, px: number, py: number): Pt {
  return { x: (px - cam.offsetX) / cam.scale, y: (cam.offsetY - py) / cam.scale };
}

export function worldVertices(el: { pose: { x: number; y: number; rot_rad: number }; vertices: [number, number][] }): Pt[] {
  const c = Math.cos(el.pose.rot_rad);
  const s = Math.sin(el.pose.rot_rad);
  return el.vertices.map(([x, y]) => ({
    x: el.pose.x + x * c - y * s,
    y: el.pose.y + x * s + y * c,
  }));
}

export const SOURCE_RADIUS_PX = 7;
export const HANDLE_DISTANCE_PX = 26;
export const HANDLE_RADIUS_PX = 6;

export function sourceHandleScreen(cam: Camera, src: SourceJson): Pt {
  // rotation handle sits outside the glyph along the beam heading
  const p = toScreen(cam, src.pose.x, src.pose.y);
  return {
    x: p.x + HANDLE_DISTANCE_PX * Math.cos(src.pose.rot_rad),
    y: p.y - HANDLE_DISTANCE_PX * Math.sin(src.pose.rot_rad),
  };
}

export function elementCenter(el: { pose: { x: number; y: number; rot_rad: number }; vertices: [number, number][] }): Pt {
  const vs = worldVertices(el);
  const n = vs.length;
  return {
    x: vs.reduce((a, v) => a + v.x, 0) / n,
    y: vs.reduce((a, v) => a + v.y, 0) / n,
  };
}

export function elementHandleScreen(cam: Camera, el: { pose: { x: number; y: number; rot_rad: number }; vertices: [number, number][] }): Pt {
  // outside the shape: beyond its farthest vertex along the pose rotation
  const c = elementCenter(el);
  const vs = worldVertices(el);
  const reach = Math.max(...vs.map((v) => Math.hypot(v.x - c.x, v.y - c.y)));
  const p = toScreen(cam, c.x, c.y);
  const r = cam.scale * reach + HANDLE_DISTANCE_PX;
  return {
    x: p.x + r * Math.cos(el.pose.rot_rad),
    y: p.y - r * Math.sin(el.pose.rot_rad),
  };
}

export function renderScene(
  scene: SceneJson,
  paths: PathJson[],
  cam: Camera,
  selected: string | null,
): Shape[] {
  const shapes: Shape[] = [];
  for (const el of scene.elements) {
    shapes.push({
      kind: "polygon",
      points: worldVertices(el).map((v) => toScreen(cam, v.x, v.y)),
      fill: fillFor(el.medium),
      stroke: el.id === selected ? "#ff8800" : "#555555",
      width: el.id === selected ? 2.5 : 1,
      id: el.id,
    });
  }
  for (const p of paths) {
    if (p.segments.length === 0) continue;
    const pts = [toScreen(cam, p.segments[0].x0, p.segments[0].y0)];
    for (const s of p.segments) pts.push(toScreen(cam, s.x1, s.y1));
    shapes.push({
      kind: "polyline",
      points: pts,
      stroke: colorFor(p.lambda_nm),
      width: 1.5,
      lambda: p.lambda_nm,
    });
  }
  for (const src of scene.sources) {
    const p = toScreen(cam, src.pose.x, src.pose.y);
    shapes.push({
      kind: "circle",
      center: p,
      radius: SOURCE_RADIUS_PX,
      fill: "#333333",
      stroke: src.id === selected ? "#ff8800" : "#000000",
      id: src.id,
    });
    const handle = sourceHandleScreen(cam, src);
    shapes.push({ kind: "line", from: p, to: handle, stroke: "#888888", width: 1 });
    shapes.push({
      kind: "circle",
      center: handle,
      radius: HANDLE_RADIUS_PX,
      fill: src.id === selected ? "#ff8800" : "#bbbbbb",
      stroke: "#000000",
      id: `${src.id}::handle`,
    });
  }
  if (selected) {
    const el = scene.elements.find((e) => e.id === selected);
    if (el) {
      const c = toScreen(cam, elementCenter(el).x, elementCenter(el).y);
      const handle = elementHandleScreen(cam, el);
      shapes.push({ kind: "line", from: c, to: handle, stroke: "#888888", width: 1 });
      shapes.push({
        kind: "circle",
        center: handle,
        radius: HANDLE_RADIUS_PX,
        fill: "#ff8800",
        stroke: "#000000",
        id: `${el.id}::handle`,
      });
    }
  }
  return shapes;
}

export function paint(ctx: CanvasRenderingContext2D, shapes: Shape[], w: number, h: number): void {
  ctx.clearRect(0, 0, w, h);
  ctx.fillStyle = "#ffffff";
  ctx.fillRect(0, 0, w, h);
  for (const s of shapes) {
    switch (s.kind) {
      case "polygon": {
        ctx.beginPath();
        s.points.forEach((p, i) => (i === 0 ? ctx.moveTo(p.x, p.y) : ctx.lineTo(p.x, p.y)));
        ctx.closePath();
        if (s.fill !== "none") {
          ctx.fillStyle = s.fill;
          ctx.fill();
        }
        ctx.strokeStyle = s.stroke;
        ctx.lineWidth = s.width;
        ctx.stroke();
        break;
      }
      case "polyline": {
        ctx.beginPath();
        s.points.forEach((p, i) => (i === 0 ? ctx.moveTo(p.x, p.y) : ctx.lineTo(p.x, p.y)));
        ctx.strokeStyle = s.stroke;
        ctx.lineWidth = s.width;
        ctx.stroke();
        break;
      }
      case "circle": {
        ctx.beginPath();
        ctx.arc(s.center.x, s.center.y, s.radius, 0, 2 * Math.PI);
        ctx.fillStyle = s.fill;
        ctx.fill();
        ctx.strokeStyle = s.stroke;
        ctx.lineWidth = 1;
        ctx.stroke();
        break;
      }
      case "line": {
        ctx.beginPath();
        ctx.moveTo(s.from.x, s.from.y);
        ctx.lineTo(s.to.x, s.to.y);
        ctx.strokeStyle = s.stroke;
        ctx.lineWidth = s.width;
        ctx.stroke();
        break;
      }
    }
  }
}
