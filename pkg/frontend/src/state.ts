/* Client-side view state and its transitions. The server is never
 * mutated; everything here is plain data so transitions are unit-testable. */

export const MAX_OPEN_VIEWS = 3;

export type PlaybackMode = "stopped" | "playing";

export interface ViewState {
  runId: string | null;
  generation: number;
  generationCount: number;
  openViews: string[]; // bound reduction views, at most MAX_OPEN_VIEWS
  selectedIndex: number | null; // -1 = parent, null = no selection
  playback: PlaybackMode;
}

export function initialState(): ViewState {
  return {
    runId: null,
    generation: 0,
    generationCount: 0,
    openViews: [],
    selectedIndex: null,
    playback: "stopped",
  };
}

export function withRun(
  state: ViewState,
  runId: string,
  generationCount: number,
  availableViews: string[],
): ViewState {
  return {
    ...state,
    runId,
    generationCount,
    generation: 0,
    openViews: availableViews.slice(0, MAX_OPEN_VIEWS),
    selectedIndex: null,
    playback: "stopped",
  };
}

/* Clamp into range; moving the slider drops the selection because point
 * indices are only meaningful within one generation. */
export function setGeneration(state: ViewState, g: number): ViewState {
  const clamped = Math.min(Math.max(g, 0), Math.max(state.generationCount - 1, 0));
  if (clamped === state.generation) return state;
  return { ...state, generation: clamped, selectedIndex: null };
}

export function toggleView(state: ViewState, view: string): ViewState {
  if (state.openViews.includes(view)) {
    return { ...state, openViews: state.openViews.filter((v) => v !== view) };
  }
  if (state.openViews.length >= MAX_OPEN_VIEWS) return state;
  return { ...state, openViews: [...state.openViews, view] };
}

export function selectPoint(state: ViewState, index: number): ViewState {
  return { ...state, selectedIndex: index };
}

export function clearSelection(state: ViewState): ViewState {
  return { ...state, selectedIndex: null };
}

export function startPlayback(state: ViewState): ViewState {
  return { ...state, playback: "playing" };
}

export function stopPlayback(state: ViewState): ViewState {
  return { ...state, playback: "stopped" };
}
