// HTTP client for the trace service. The UI consumes this API and nothing
// else; all physics stays on the server.

import type { SceneJson, ScenarioDescriptorJson, TraceJson } from "./types.js";

export class ApiError extends Error {
  status: number;
  detail: unknown;

  constructor(status: number, detail: unknown) {
    super(`service responded ${status}`);
    this.status = status;
    this.detail = detail;
  }
}

export interface TraceApi {
  listScenarios(): Promise<ScenarioDescriptorJson[]>;
  instantiate(name: string, params: Record<string, unknown>): Promise<SceneJson>;
  trace(scene: SceneJson, maxEvents?: number): Promise<TraceJson>;
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class HttpApi implements TraceApi {
  private base: string;
  private fetchFn: FetchLike;

  constructor(base = "", fetchFn: FetchLike = (u, i) => fetch(u, i)) {
    this.base = base;
    this.fetchFn = fetchFn;
  }

  private async post(url: string, body: unknown): Promise<unknown> {
    const resp = await this.fetchFn(this.base + url, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    const payload = await resp.json();
    if (!resp.ok) {
      throw new ApiError(resp.status, (payload as { detail?: unknown }).detail ?? payload);
    }
    return payload;
  }

  async listScenarios(): Promise<ScenarioDescriptorJson[]> {
    const resp = await this.fetchFn(this.base + "/api/scenarios");
    if (!resp.ok) throw new ApiError(resp.status, await resp.text());
    return (await resp.json()) as ScenarioDescriptorJson[];
  }

  async instantiate(name: string, params: Record<string, unknown>): Promise<SceneJson> {
    return (await this.post(`/api/scenarios/${name}`, params)) as SceneJson;
  }

  async trace(scene: SceneJson, maxEvents?: number): Promise<TraceJson> {
    const body: Record<string, unknown> = { scene };
    if (maxEvents !== undefined) body.max_events = maxEvents;
    return (await this.post("/api/trace", body)) as TraceJson;
  }
}
