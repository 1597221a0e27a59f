// View controller: owns the client scene copy, issues debounced trace
// requests, and guards against stale responses with a version counter.
// All physics lives on the server; this file only edits poses and decides
// when to ask for a new trace.

import { ApiError, type TraceApi } from "./api.js";
import type { PathJson, SceneJson, SourceJson } from "./types.js";

export const DEBOUNCE_MS = 50;

export interface ViewState {
  scene: SceneJson | null;
  selected: string | null;
  paths: PathJson[]; // last rendered paths; always correspond to renderedVersion
  version: number; // bumps on every scene edit
  renderedVersion: number; // version of the scene the displayed paths belong to
  pending: boolean; // a trace is scheduled or in flight
  banner: string | null;
}

export type Gesture =
  | { kind: "translate"; dx: number; dy: number }
  | { kind: "rotate"; toAngle: number };

export interface Scheduler {
  set(fn: () => void, ms: number): number;
  clear(id: number): void;
}

const defaultScheduler: Scheduler = {
  set: (fn, ms) => setTimeout(fn, ms) as unknown as number,
  clear: (id) => clearTimeout(id),
};

function clonePose<T extends { pose: { x: number; y: number; rot_rad: number } }>(
  obj: T,
  pose: { x: number; y: number; rot_rad: number },
): T {
  return { ...obj, pose: { ...pose } };
}

function normalizeAngle(a: number): number {
  const twoPi = 2 * Math.PI;
  let r = a % twoPi;
  if (r < 0) r += twoPi;
  return r;
}

export class SandboxController {
  state: ViewState = {
    scene: null,
    selected: null,
    paths: [],
    version: 0,
    renderedVersion: 0,
    pending: false,
    banner: null,
  };

  private api: TraceApi;
  private scheduler: Scheduler;
  private onChange: (state: ViewState) => void;
  private timer: number | null = null;
  private inFlight = false;
  private dirty = false; // an edit arrived while a request was in flight
  private lastGoodScene: SceneJson | null = null; // snap-back target for rejected poses

  constructor(api: TraceApi, onChange: (state: ViewState) => void, scheduler: Scheduler = defaultScheduler) {
    this.api = api;
    this.onChange = onChange;
    this.scheduler = scheduler;
  }

  private notify(): void {
    this.onChange(this.state);
  }

  async loadScenario(name: string, params: Record<string, unknown> = {}): Promise<void> {
    let scene: SceneJson;
    try {
      scene = await this.api.instantiate(name, params);
    } catch (err) {
      this.state.banner = describeError(err); // state otherwise unchanged
      this.notify();
      return;
    }
    this.state.scene = scene;
    this.state.selected = null;
    this.state.paths = [];
    this.state.version += 1;
    this.state.banner = null;
    this.notify();
    this.requestTrace(true);
  }

  select(id: string | null): void {
    this.state.selected = id;
    this.notify();
  }

  /** Apply a translate/rotate gesture to the selected element or source. */
  applyGesture(id: string, gesture: Gesture): void {
    const scene = this.state.scene;
    if (!scene) return;
    const el = scene.elements.find((e) => e.id === id);
    const src = scene.sources.find((s) => s.id === id);
    const target = el ?? src;
    if (!target) return;
    const pose = { ...target.pose };
    if (gesture.kind === "translate") {
      pose.x += gesture.dx;
      pose.y += gesture.dy;
    } else {
      pose.rot_rad = normalizeAngle(gesture.toAngle);
    }
    this.state.scene = {
      ...scene,
      elements: scene.elements.map((e) => (e.id === id ? clonePose(e, pose) : e)),
      sources: scene.sources.map((s) => (s.id === id ? clonePose(s, pose) : s)),
    };
    this.state.version += 1;
    this.notify();
    this.requestTrace(false);
  }

  /** Switch a source between monochrome and white light and retrace. */
  toggleWhiteLight(id: string): void {
    const scene = this.state.scene;
    if (!scene) return;
    const src = scene.sources.find((s) => s.id === id);
    if (!src) return;
    const spectrum: SourceJson["spectrum"] =
      src.spectrum.kind === "white" ? { kind: "mono", lambda_nm: 550.0 } : { kind: "white" };
    this.state.scene = {
      ...scene,
      sources: scene.sources.map((s) => (s.id === id ? { ...s, spectrum } : s)),
    };
    this.state.version += 1;
    this.notify();
    this.requestTrace(true);
  }

  /**
   * Debounced trace issue: at most one outstanding request; edits landing
   * while one is in flight coalesce into a single follow-up.
   */
  private requestTrace(immediate: boolean): void {
    this.state.pending = true;
    if (this.inFlight) {
      this.dirty = true;
      return;
    }
    if (this.timer !== null) {
      if (!immediate) return; // coalesce into the pending timer
      this.scheduler.clear(this.timer);
      this.timer = null;
    }
    if (immediate) {
      void this.fireTrace();
    } else {
      this.timer = this.scheduler.set(() => {
        this.timer = null;
        void this.fireTrace();
      }, DEBOUNCE_MS);
    }
  }

  private async fireTrace(): Promise<void> {
    const scene = this.state.scene;
    if (!scene) {
      this.state.pending = false;
      return;
    }
    const requestVersion = this.state.version;
    this.inFlight = true;
    this.dirty = false;
    try {
      const trace = await this.api.trace(scene);
      this.inFlight = false;
      if (requestVersion !== this.state.version) {
        // stale: the scene moved on while we were waiting; never render
        this.followUp();
        return;
      }
      this.state.paths = trace.paths;
      this.state.renderedVersion = requestVersion;
      this.state.pending = false;
      this.state.banner = null;
      this.lastGoodScene = scene;
      this.notify();
      this.followUp();
    } catch (err) {
      this.inFlight = false;
      if (requestVersion !== this.state.version) {
        this.followUp();
        return;
      }
      if (err instanceof ApiError && err.status === 422 && this.lastGoodScene) {
        // rejected pose: snap back to the last scene the server accepted
        this.state.scene = this.lastGoodScene;
        this.state.version += 1;
        this.state.renderedVersion = this.state.version;
        this.state.pending = false;
        this.state.banner = describeError(err);
        this.notify();
        return;
      }
      this.state.pending = false;
      this.state.banner = describeError(err);
      this.notify();
      this.followUp();
    }
  }

  private followUp(): void {
    if (this.dirty) {
      this.dirty = false;
      void this.fireTrace();
    } else if (!this.inFlight) {
      this.state.pending = false;
    }
  }
}

function describeError(err: unknown): string {
  if (err instanceof ApiError) {
    const detail = err.detail;
    if (Array.isArray(detail)) {
      const first = detail[0] as { kind?: string; message?: string; param?: string };
      const head = first?.kind ?? first?.param ?? "";
      return `rejected (${err.status}): ${head} ${first?.message ?? ""}`.trim();
    }
    return `rejected (${err.status}): ${String(detail)}`;
  }
  return err instanceof Error ? err.message : String(err);
}
