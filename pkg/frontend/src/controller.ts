/* Orchestration between the API client and the view state. DOM-free so the
 * whole interaction flow is unit-testable with a fake API: main.ts only
 * wires events in and paints on change. */

import type { Api } from "./api.js";
import { playbackSequence, stepPlayback } from "./playback.js";
import {
  ViewState,
  initialState,
  selectPoint,
  setGeneration,
  startPlayback,
  stopPlayback,
  toggleView,
  withRun,
} from "./state.js";
import type {
  GenerationPayload,
  Manifest,
  PointDetailPayload,
  TracePayload,
} from "./types.js";

export interface SliceSet {
  g: number;
  slices: Map<string, GenerationPayload>;
}

export const STOCHASTIC_REPLAY_COUNT = 9;

export class InspectorController {
  state: ViewState = initialState();
  manifest: Manifest | null = null;
  availableViews: string[] = [];
  fitness: number[] = [];
  detail: PointDetailPayload | null = null;
  traces: TracePayload[] = [];
  /* Last fully-loaded frame; kept on fetch failure so the view can show a
   * stale frame behind the error banner. */
  current: SliceSet | null = null;

  onChange: (() => void) | null = null;
  onError: ((message: string) => void) | null = null;

  private sliceCache = new Map<string, GenerationPayload>();
  private loadToken = 0;

  constructor(private api: Api) {}

  async openRun(runId: string): Promise<void> {
    try {
      this.manifest = await this.api.manifest(runId);
      this.availableViews = (await this.api.views(runId)).views;
      this.fitness = (await this.api.fitness(runId)).parent_fitness;
    } catch (err) {
      this.onError?.(String(err));
      return;
    }
    this.sliceCache.clear();
    this.detail = null;
    this.traces = [];
    this.current = null;
    this.state = withRun(this.state, runId,
                         this.manifest.generations_completed,
                         this.availableViews);
    await this.loadGeneration(0);
  }

  toggleView(view: string): void {
    this.state = toggleView(this.state, view);
    void this.loadGeneration(this.state.generation, true);
  }

  private async slice(view: string, g: number): Promise<GenerationPayload> {
    const runId = this.state.runId!;
    const key = `${view}:${g}`;
    const cached = this.sliceCache.get(key);
    if (cached) return cached;
    const payload = await this.api.generation(runId, g, view);
    this.sliceCache.set(key, payload);
    return payload;
  }

  /* Fetch the slice of every open view for one generation. Responses for
   * superseded generations are discarded by token. */
  async loadGeneration(g: number, force = false): Promise<void> {
    if (this.state.runId === null) return;
    const before = this.state.generation;
    this.state = setGeneration(this.state, g);
    if (!force && this.current !== null && this.state.generation === before
        && this.current.g === before) {
      return;
    }
    const target = this.state.generation;
    const token = ++this.loadToken;
    try {
      const entries = await Promise.all(
        this.state.openViews.map(async (view) =>
          [view, await this.slice(view, target)] as const),
      );
      if (token !== this.loadToken) return; // superseded; drop silently
      this.current = { g: target, slices: new Map(entries) };
      if (this.state.selectedIndex === null) {
        // selection (and with it the detail panel) only survives reloads
        // of the same generation, e.g. when a view is toggled
        this.detail = null;
        this.traces = [];
      }
      this.onChange?.();
    } catch (err) {
      if (token === this.loadToken) this.onError?.(String(err));
    }
  }

  /* Server-side click resolution: nearest point index, then the full point
   * record; the same index is highlighted in every open view. */
  async clickAt(view: string, x: number, y: number): Promise<PointDetailPayload | null> {
    if (this.state.runId === null || this.current === null) return null;
    const runId = this.state.runId;
    const g = this.state.generation;
    try {
      const { index } = await this.api.nearest(runId, g, view, x, y);
      if (g !== this.state.generation) return null; // slider moved meanwhile
      this.state = selectPoint(this.state, index);
      this.detail = await this.api.pointDetail(runId, g, index);
      this.traces = [];
      this.onChange?.();
      return this.detail;
    } catch (err) {
      this.onError?.(String(err));
      return null;
    }
  }

  async requestRollouts(stochastic: boolean): Promise<TracePayload[]> {
    if (this.state.runId === null || this.state.selectedIndex === null) {
      return [];
    }
    const body = {
      g: this.state.generation,
      i: this.state.selectedIndex,
      stochastic,
      count: stochastic ? STOCHASTIC_REPLAY_COUNT : 1,
    };
    try {
      const { traces } = await this.api.rollout(this.state.runId, body);
      this.traces = traces;
      this.onChange?.();
      return traces;
    } catch (err) {
      this.onError?.(String(err));
      return [];
    }
  }

  startCloudPlayback(): void {
    if (this.state.generationCount === 0) return;
    if (this.state.generation >= this.state.generationCount - 1) {
      // restart from the beginning when already at the end
      void this.loadGeneration(0);
    }
    this.state = startPlayback(this.state);
    this.onChange?.();
  }

  stopCloudPlayback(): void {
    this.state = stopPlayback(this.state);
    this.onChange?.();
  }

  /* One playback frame; the caller owns the timer. */
  async playbackTick(): Promise<void> {
    if (this.state.playback !== "playing") return;
    const last = this.state.generationCount - 1;
    if (this.state.generation >= last) {
      this.state = stopPlayback(this.state);
      this.onChange?.();
      return;
    }
    const step = stepPlayback(this.state.generation, last);
    await this.loadGeneration(step.g);
    if (step.done) {
      this.state = stopPlayback(this.state);
      this.onChange?.();
    }
  }

  plannedPlayback(): number[] {
    if (this.state.generationCount === 0) return [];
    return playbackSequence(this.state.generation, this.state.generationCount - 1);
  }
}
