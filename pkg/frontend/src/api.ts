/* Thin typed client over the inspector endpoints. */

import type {
  FitnessPayload,
  GenerationPayload,
  Manifest,
  NearestPayload,
  PointDetailPayload,
  RolloutRequestBody,
  RolloutResponse,
  ViewsPayload,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function getJson<T>(url: string): Promise<T> {
  const response = await fetch(url);
  if (!response.ok) {
    throw new ApiError(response.status, `GET ${url} -> ${response.status}`);
  }
  return (await response.json()) as T;
}

export class ApiClient {
  constructor(private base: string = "") {}

  listRuns(): Promise<Manifest[]> {
    return getJson(`${this.base}/runs`);
  }

  manifest(runId: string): Promise<Manifest> {
    return getJson(`${this.base}/runs/${runId}/manifest`);
  }

  views(runId: string): Promise<ViewsPayload> {
    return getJson(`${this.base}/runs/${runId}/views`);
  }

  fitness(runId: string): Promise<FitnessPayload> {
    return getJson(`${this.base}/runs/${runId}/fitness`);
  }

  generation(runId: string, g: number, view: string): Promise<GenerationPayload> {
    return getJson(
      `${this.base}/runs/${runId}/generations/${g}?view=${encodeURIComponent(view)}`,
    );
  }

  nearest(runId: string, g: number, view: string, x: number, y: number): Promise<NearestPayload> {
    const query = `view=${encodeURIComponent(view)}&x=${x}&y=${y}`;
    return getJson(`${this.base}/runs/${runId}/nearest/${g}?${query}`);
  }

  pointDetail(runId: string, g: number, i: number): Promise<PointDetailPayload> {
    return getJson(`${this.base}/runs/${runId}/point/${g}/${i}`);
  }

  async rollout(runId: string, body: RolloutRequestBody): Promise<RolloutResponse> {
    const response = await fetch(`${this.base}/runs/${runId}/rollout`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      throw new ApiError(response.status, `POST rollout -> ${response.status}`);
    }
    return (await response.json()) as RolloutResponse;
  }
}

/* Structural interface so tests can inject a fake client. */
export type Api = Pick<
  ApiClient,
  | "listRuns"
  | "manifest"
  | "views"
  | "fitness"
  | "generation"
  | "nearest"
  | "pointDetail"
  | "rollout"
>;
