// Browser wiring: canvas, pointer gestures (interior drag moves, outer
// handle rotates), scenario picker, banner. Physics and validation live on
// the server; this file only maps pixels to pose edits.

import { HttpApi } from "./api.js";
import { DEBOUNCE_MS, SandboxController } from "./controller.js";
import {
  elementCenter,
  elementHandleScreen,
  fitCamera,
  HANDLE_RADIUS_PX,
  paint,
  renderScene,
  SOURCE_RADIUS_PX,
  sourceHandleScreen,
  toWorld,
  type Camera,
  worldVertices,
} from "./render.js";
import type { SceneJson } from "./types.js";

const canvas = document.getElementById("view") as HTMLCanvasElement;
const ctx = canvas.getContext("2d")!;
const picker = document.getElementById("scenario") as HTMLSelectElement;
const loadBtn = document.getElementById("load") as HTMLButtonElement;
const whiteBtn = document.getElementById("white") as HTMLButtonElement;
const banner = document.getElementById("banner") as HTMLDivElement;

let camera: Camera = { scale: 60, offsetX: 0, offsetY: 0 };
let cameraScene: SceneJson | null = null;

const api = new HttpApi("");
const controller = new SandboxController(api, (state) => {
  if (state.scene && state.scene !== cameraScene) {
    if (!cameraScene || state.scene.bounds !== cameraScene.bounds) {
      camera = fitCamera(state.scene, canvas.width, canvas.height);
    }
    cameraScene = state.scene;
  }
  banner.textContent = state.banner ?? "";
  banner.style.display = state.banner ? "block" : "none";
  if (state.scene) {
    paint(ctx, renderScene(state.scene, state.paths, camera, state.selected), canvas.width, canvas.height);
  }
});

function pointInPolygonScreen(px: number, py: number, pts: { x: number; y: number }[]): boolean {
  let inside = false;
  for (let i = 0, j = pts.length - 1; i < pts.length; j = i++) {
    const a = pts[i];
    const b = pts[j];
    if (a.y > py !== b.y > py && px < a.x + ((py - a.y) * (b.x - a.x)) / (b.y - a.y)) {
      inside = !inside;
    }
  }
  return inside;
}

type DragMode =
  | { kind: "none" }
  | { kind: "move"; id: string; lastX: number; lastY: number }
  | { kind: "rotate"; id: string; center: { x: number; y: number } };

let drag: DragMode = { kind: "none" };

function hitTest(px: number, py: number): DragMode {
  const scene = controller.state.scene;
  if (!scene) return { kind: "none" };
  const near = (p: { x: number; y: number }, r: number) => Math.hypot(p.x - px, p.y - py) <= r;
  // rotation handles first (they sit outside the shapes)
  for (const src of scene.sources) {
    if (near(sourceHandleScreen(camera, src), HANDLE_RADIUS_PX + 4)) {
      const c = { x: src.pose.x, y: src.pose.y };
      return { kind: "rotate", id: src.id, center: c };
    }
  }
  const sel = scene.elements.find((e) => e.id === controller.state.selected);
  if (sel && near(elementHandleScreen(camera, sel), HANDLE_RADIUS_PX + 4)) {
    return { kind: "rotate", id: sel.id, center: elementCenter(sel) };
  }
  for (const src of scene.sources) {
    const p = { x: camera.offsetX + camera.scale * src.pose.x, y: camera.offsetY - camera.scale * src.pose.y };
    if (near(p, SOURCE_RADIUS_PX + 4)) {
      return { kind: "move", id: src.id, lastX: px, lastY: py };
    }
  }
  for (const el of [...scene.elements].reverse()) {
    const pts = worldVertices(el).map((v) => ({
      x: camera.offsetX + camera.scale * v.x,
      y: camera.offsetY - camera.scale * v.y,
    }));
    if (pointInPolygonScreen(px, py, pts)) {
      return { kind: "move", id: el.id, lastX: px, lastY: py };
    }
  }
  return { kind: "none" };
}

canvas.addEventListener("pointerdown", (ev) => {
  const rect = canvas.getBoundingClientRect();
  const px = ev.clientX - rect.left;
  const py = ev.clientY - rect.top;
  drag = hitTest(px, py);
  controller.select(drag.kind === "none" ? null : drag.id);
  if (drag.kind !== "none") canvas.setPointerCapture(ev.pointerId);
});

canvas.addEventListener("pointermove", (ev) => {
  if (drag.kind === "none") return;
  const rect = canvas.getBoundingClientRect();
  const px = ev.clientX - rect.left;
  const py = ev.clientY - rect.top;
  if (drag.kind === "move") {
    const dx = (px - drag.lastX) / camera.scale;
    const dy = -(py - drag.lastY) / camera.scale;
    drag.lastX = px;
    drag.lastY = py;
    controller.applyGesture(drag.id, { kind: "translate", dx, dy });
  } else {
    const w = toWorld(camera, px, py);
    const angle = Math.atan2(w.y - drag.center.y, w.x - drag.center.x);
    controller.applyGesture(drag.id, { kind: "rotate", toAngle: angle });
  }
});

canvas.addEventListener("pointerup", () => {
  drag = { kind: "none" };
});

loadBtn.addEventListener("click", () => {
  void controller.loadScenario(picker.value);
});

whiteBtn.addEventListener("click", () => {
  const scene = controller.state.scene;
  if (!scene || scene.sources.length === 0) return;
  const selectedSource = scene.sources.find((s) => s.id === controller.state.selected);
  controller.toggleWhiteLight((selectedSource ?? scene.sources[0]).id);
});

async function boot(): Promise<void> {
  try {
    const scenarios = await api.listScenarios();
    picker.innerHTML = "";
    for (const s of scenarios) {
      const opt = document.createElement("option");
      opt.value = s.name;
      opt.textContent = s.name;
      picker.appendChild(opt);
    }
  } catch {
    banner.textContent = "service unreachable";
    banner.style.display = "block";
    return;
  }
  await controller.loadScenario("oceanarium");
}

void boot();

// exposed for quick poking from the devtools console
(window as unknown as Record<string, unknown>).sandbox = controller;
(window as unknown as Record<string, unknown>).SANDBOX_DEBOUNCE_MS = DEBOUNCE_MS;
