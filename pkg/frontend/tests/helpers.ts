// Test doubles: a manual scheduler for deterministic debounce control and a
// fixture-backed fake of the trace service.

import { ApiError, type TraceApi } from "../src/api.js";
import type { SceneJson, ScenarioDescriptorJson, TraceJson } from "../src/types.js";

export class ManualScheduler {
  pending: { id: number; fn: () => void; ms: number }[] = [];
  private nextId = 1;

  set = (fn: () => void, ms: number): number => {
    const id = this.nextId++;
    this.pending.push({ id, fn, ms });
    return id;
  };

  clear = (id: number): void => {
    this.pending = this.pending.filter((t) => t.id !== id);
  };

  /** Fire every due timer (the debounce window elapsing). */
  flush(): void {
    const due = this.pending;
    this.pending = [];
    for (const t of due) t.fn();
  }
}

export interface Deferred {
  scene: SceneJson;
  resolve: (trace: TraceJson) => void;
  reject: (err: unknown) => void;
}

/**
 * Fake service. In `manual` mode every trace call parks as a Deferred the
 * test settles explicitly; otherwise calls resolve through `router`, which
 * maps the traced scene to a recorded response.
 */
export class FakeApi implements TraceApi {
  scenarios: ScenarioDescriptorJson[] = [];
  scenes: Record<string, SceneJson> = {};
  router: (scene: SceneJson) => TraceJson | ApiError = () => new ApiError(500, "no route");
  manual = false;
  deferred: Deferred[] = [];
  traceCalls = 0;

  async listScenarios(): Promise<ScenarioDescriptorJson[]> {
    return this.scenarios;
  }

  async instantiate(name: string): Promise<SceneJson> {
    const scene = this.scenes[name];
    if (!scene) throw new ApiError(404, `unknown scenario '${name}'`);
    return scene;
  }

  trace(scene: SceneJson): Promise<TraceJson> {
    this.traceCalls += 1;
    if (this.manual) {
      return new Promise<TraceJson>((resolve, reject) => {
        this.deferred.push({ scene, resolve, reject });
      });
    }
    const out = this.router(scene);
    return out instanceof ApiError ? Promise.reject(out) : Promise.resolve(out);
  }
}

/** Let queued promise callbacks run. */
export async function settle(): Promise<void> {
  for (let i = 0; i < 5; i++) await Promise.resolve();
}
