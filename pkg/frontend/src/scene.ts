/* Pure scene builders: API payloads in, drawable primitives out.
 * Canvas painting lives in render.ts; everything here is testable without
 * a DOM. */

import { offspringColor, parentColor, traceColor } from "./color.js";
import type { GenerationPayload, TracePayload } from "./types.js";

export interface Viewport {
  xMin: number;
  xMax: number;
  yMin: number;
  yMax: number;
}

export interface Marker {
  index: number;
  x: number; // data coords
  y: number;
  color: string;
  radius: number;
  isParent: boolean;
  bin: number;
  selected: boolean;
}

export interface Polyline {
  points: [number, number][];
  color: string;
}

export const OFFSPRING_RADIUS = 3.5;
export const PARENT_RADIUS = 6;

export function emptyViewport(): Viewport {
  return { xMin: -1, xMax: 1, yMin: -1, yMax: 1 };
}

/* Bounds of a set of coordinate pairs, padded so points never sit on the
 * frame edge; degenerate spans widen to a unit box. */
export function boundsOf(coords: Iterable<[number, number]>): Viewport {
  let xMin = Infinity;
  let xMax = -Infinity;
  let yMin = Infinity;
  let yMax = -Infinity;
  for (const [x, y] of coords) {
    if (x < xMin) xMin = x;
    if (x > xMax) xMax = x;
    if (y < yMin) yMin = y;
    if (y > yMax) yMax = y;
  }
  if (!isFinite(xMin)) return emptyViewport();
  if (xMax - xMin < 1e-12) {
    xMin -= 0.5;
    xMax += 0.5;
  }
  if (yMax - yMin < 1e-12) {
    yMin -= 0.5;
    yMax += 0.5;
  }
  const padX = (xMax - xMin) * 0.05;
  const padY = (yMax - yMin) * 0.05;
  return { xMin: xMin - padX, xMax: xMax + padX, yMin: yMin - padY, yMax: yMax + padY };
}

export function mergeViewports(a: Viewport, b: Viewport): Viewport {
  return {
    xMin: Math.min(a.xMin, b.xMin),
    xMax: Math.max(a.xMax, b.xMax),
    yMin: Math.min(a.yMin, b.yMin),
    yMax: Math.max(a.yMax, b.yMax),
  };
}

export function dataToPixel(
  vp: Viewport,
  width: number,
  height: number,
  x: number,
  y: number,
): [number, number] {
  const px = ((x - vp.xMin) / (vp.xMax - vp.xMin)) * width;
  const py = height - ((y - vp.yMin) / (vp.yMax - vp.yMin)) * height;
  return [px, py];
}

export function pixelToData(
  vp: Viewport,
  width: number,
  height: number,
  px: number,
  py: number,
): [number, number] {
  const x = vp.xMin + (px / width) * (vp.xMax - vp.xMin);
  const y = vp.yMin + ((height - py) / height) * (vp.yMax - vp.yMin);
  return [x, y];
}

/* One marker per payload point: exactly population_size + 1 of them, the
 * parent drawn larger and brighter, offspring shaded by bin. */
export function buildCloudScene(
  payload: GenerationPayload,
  selectedIndex: number | null,
): Marker[] {
  return payload.points.map((p) => ({
    index: p.index,
    x: p.coords[0],
    y: p.coords[1],
    color: p.is_parent ? parentColor(payload.g) : offspringColor(payload.g, p.bin),
    radius: p.is_parent ? PARENT_RADIUS : OFFSPRING_RADIUS,
    isParent: p.is_parent,
    bin: p.bin,
    selected: selectedIndex !== null && p.index === selectedIndex,
  }));
}

/* One polyline per replayed trace. Walker frames carry (x, y, vx, vy);
 * grid frames carry (x, y, ...flags); both start their path at the first
 * two state entries. */
export function buildTraceOverlay(traces: TracePayload[]): Polyline[] {
  return traces.map((trace, k) => ({
    points: trace.frames.map((f) => [f.state[0], f.state[1]] as [number, number]),
    color: traceColor(k, traces.length),
  }));
}

/* Index of the polyline passing closest to a click, or null when the click
 * is farther than the threshold from every line (measured point-to-vertex
 * in data space). */
export function nearestTraceIndex(
  overlay: Polyline[],
  x: number,
  y: number,
  threshold: number,
): number | null {
  let best: number | null = null;
  let bestD2 = threshold * threshold;
  overlay.forEach((line, k) => {
    for (const [px, py] of line.points) {
      const d2 = (px - x) * (px - x) + (py - y) * (py - y);
      if (d2 <= bestD2) {
        bestD2 = d2;
        best = k;
      }
    }
  });
  return best;
}
