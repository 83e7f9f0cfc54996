/* Canvas painting. Scenes come pre-built from scene.ts; this module just
 * puts pixels on screen. */

import type { Marker, Polyline, Viewport } from "./scene.js";
import { dataToPixel } from "./scene.js";
import type { TracePayload } from "./types.js";

const BACKGROUND = "#101418";
const GRID_COLOR = "#232b33";
const SELECT_COLOR = "#ffffff";
const CURVE_COLOR = "#6fc2ff";
const CURSOR_COLOR = "#ff5a5a";

function clear(ctx: CanvasRenderingContext2D): void {
  ctx.fillStyle = BACKGROUND;
  ctx.fillRect(0, 0, ctx.canvas.width, ctx.canvas.height);
}

function drawAxes(ctx: CanvasRenderingContext2D, vp: Viewport): void {
  const { width, height } = ctx.canvas;
  ctx.strokeStyle = GRID_COLOR;
  ctx.lineWidth = 1;
  if (vp.xMin < 0 && vp.xMax > 0) {
    const [px] = dataToPixel(vp, width, height, 0, 0);
    ctx.beginPath();
    ctx.moveTo(px, 0);
    ctx.lineTo(px, height);
    ctx.stroke();
  }
  if (vp.yMin < 0 && vp.yMax > 0) {
    const [, py] = dataToPixel(vp, width, height, 0, 0);
    ctx.beginPath();
    ctx.moveTo(0, py);
    ctx.lineTo(ctx.canvas.width, py);
    ctx.stroke();
  }
}

export function drawCloud(
  ctx: CanvasRenderingContext2D,
  vp: Viewport,
  markers: Marker[],
  overlay: Polyline[],
): void {
  clear(ctx);
  drawAxes(ctx, vp);
  const { width, height } = ctx.canvas;
  for (const line of overlay) {
    if (line.points.length === 0) continue;
    ctx.strokeStyle = line.color;
    ctx.lineWidth = 1.2;
    ctx.beginPath();
    const [x0, y0] = dataToPixel(vp, width, height, line.points[0][0], line.points[0][1]);
    ctx.moveTo(x0, y0);
    for (const [x, y] of line.points) {
      const [px, py] = dataToPixel(vp, width, height, x, y);
      ctx.lineTo(px, py);
    }
    ctx.stroke();
  }
  for (const m of markers) {
    const [px, py] = dataToPixel(vp, width, height, m.x, m.y);
    ctx.fillStyle = m.color;
    ctx.beginPath();
    if (m.isParent) {
      // diamond so the parent stays distinct at any zoom
      ctx.moveTo(px, py - m.radius);
      ctx.lineTo(px + m.radius, py);
      ctx.lineTo(px, py + m.radius);
      ctx.lineTo(px - m.radius, py);
      ctx.closePath();
    } else {
      ctx.arc(px, py, m.radius, 0, Math.PI * 2);
    }
    ctx.fill();
    if (m.selected || m.isParent) {
      ctx.strokeStyle = m.selected ? SELECT_COLOR : GRID_COLOR;
      ctx.lineWidth = m.selected ? 2 : 1;
      ctx.stroke();
    }
  }
}

export function drawFitness(
  ctx: CanvasRenderingContext2D,
  curve: number[],
  cursorG: number,
): void {
  clear(ctx);
  if (curve.length === 0) return;
  const { width, height } = ctx.canvas;
  const fMax = Math.max(...curve, 1e-9);
  const fMin = Math.min(...curve, 0);
  const px = (g: number) =>
    curve.length === 1 ? width / 2 : (g / (curve.length - 1)) * width;
  const py = (f: number) =>
    height - ((f - fMin) / (fMax - fMin || 1)) * (height - 8) - 4;
  ctx.strokeStyle = CURVE_COLOR;
  ctx.lineWidth = 1.5;
  ctx.beginPath();
  ctx.moveTo(px(0), py(curve[0]));
  for (let g = 1; g < curve.length; g++) ctx.lineTo(px(g), py(curve[g]));
  ctx.stroke();
  ctx.strokeStyle = CURSOR_COLOR;
  ctx.lineWidth = 1;
  ctx.beginPath();
  ctx.moveTo(px(cursorG), 0);
  ctx.lineTo(px(cursorG), height);
  ctx.stroke();
  ctx.fillStyle = CURSOR_COLOR;
  ctx.beginPath();
  ctx.arc(px(cursorG), py(curve[cursorG]), 3, 0, Math.PI * 2);
  ctx.fill();
}

/* Replay animation: walker traces draw as a moving dot with a trail in
 * trajectory space; grid traces draw the 16x16 board with the agent cell. */
export function drawReplayFrame(
  ctx: CanvasRenderingContext2D,
  trace: TracePayload,
  frameIndex: number,
  envId: string,
): void {
  clear(ctx);
  const { width, height } = ctx.canvas;
  const t = Math.min(frameIndex, trace.frames.length - 1);
  if (envId === "grid_quest") {
    const cell = Math.min(width, height) / 16;
    ctx.strokeStyle = GRID_COLOR;
    for (let k = 0; k <= 16; k++) {
      ctx.beginPath();
      ctx.moveTo(k * cell, 0);
      ctx.lineTo(k * cell, 16 * cell);
      ctx.stroke();
      ctx.beginPath();
      ctx.moveTo(0, k * cell);
      ctx.lineTo(16 * cell, k * cell);
      ctx.stroke();
    }
    const state = trace.frames[t].state;
    // collected flags are state[2..9]; show remaining collectibles dimmed
    ctx.fillStyle = "#ffd24d";
    ctx.fillRect(state[0] * cell + 2, (15 - state[1]) * cell + 2, cell - 4, cell - 4);
  } else {
    const pts = trace.frames.map((f) => [f.state[0], f.state[1]] as [number, number]);
    let span = 1e-9;
    for (const [x, y] of pts) span = Math.max(span, Math.abs(x), Math.abs(y));
    const vp: Viewport = { xMin: -span * 1.1, xMax: span * 1.1, yMin: -span * 1.1, yMax: span * 1.1 };
    ctx.strokeStyle = CURVE_COLOR;
    ctx.lineWidth = 1;
    ctx.beginPath();
    const [sx, sy] = dataToPixel(vp, width, height, pts[0][0], pts[0][1]);
    ctx.moveTo(sx, sy);
    for (let k = 1; k <= t; k++) {
      const [px, py] = dataToPixel(vp, width, height, pts[k][0], pts[k][1]);
      ctx.lineTo(px, py);
    }
    ctx.stroke();
    const [ax, ay] = dataToPixel(vp, width, height, pts[t][0], pts[t][1]);
    ctx.fillStyle = "#ffd24d";
    ctx.beginPath();
    ctx.arc(ax, ay, 5, 0, Math.PI * 2);
    ctx.fill();
  }
  ctx.fillStyle = "#9fb3c8";
  ctx.font = "12px monospace";
  ctx.fillText(`t=${trace.frames[t].t}  reward=${trace.frames[t].reward.toFixed(3)}`, 8, 14);
}
