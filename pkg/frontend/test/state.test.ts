import { describe, expect, it } from "vitest";

import {
  MAX_OPEN_VIEWS,
  initialState,
  selectPoint,
  setGeneration,
  startPlayback,
  stopPlayback,
  toggleView,
  withRun,
} from "../src/state.js";

function loaded() {
  return withRun(initialState(), "demo", 10, ["identity", "pca", "tsne", "extra"]);
}

describe("view state transitions", () => {
  it("opens at most three views on load", () => {
    const s = loaded();
    expect(s.openViews).toHaveLength(MAX_OPEN_VIEWS);
    expect(s.generation).toBe(0);
  });

  it("toggling a fourth view is a no-op, closing frees a slot", () => {
    let s = loaded();
    s = toggleView(s, "extra");
    expect(s.openViews).not.toContain("extra");
    s = toggleView(s, "pca");
    expect(s.openViews).toEqual(["identity", "tsne"]);
    s = toggleView(s, "extra");
    expect(s.openViews).toEqual(["identity", "tsne", "extra"]);
  });

  it("setGeneration clamps into range", () => {
    let s = loaded();
    expect(setGeneration(s, 42).generation).toBe(9);
    expect(setGeneration(s, -3).generation).toBe(0);
    expect(setGeneration(s, 7).generation).toBe(7);
  });

  it("moving the slider clears the selection", () => {
    let s = selectPoint(loaded(), 5);
    expect(s.selectedIndex).toBe(5);
    s = setGeneration(s, 3);
    expect(s.selectedIndex).toBeNull();
  });

  it("re-setting the same generation keeps the selection", () => {
    let s = selectPoint(loaded(), 2);
    s = setGeneration(s, 0);
    expect(s.selectedIndex).toBe(2);
  });

  it("parent selection uses index -1", () => {
    expect(selectPoint(loaded(), -1).selectedIndex).toBe(-1);
  });

  it("playback flag flips", () => {
    let s = startPlayback(loaded());
    expect(s.playback).toBe("playing");
    s = stopPlayback(s);
    expect(s.playback).toBe("stopped");
  });
});
