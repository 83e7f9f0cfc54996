/* DOM wiring: events in, controller methods invoked, canvases repainted on
 * controller change. */

import { ApiClient } from "./api.js";
import { InspectorController } from "./controller.js";
import { CLOUD_PLAYBACK_FPS, REPLAY_FPS } from "./playback.js";
import {
  Polyline,
  Viewport,
  boundsOf,
  buildCloudScene,
  buildTraceOverlay,
  mergeViewports,
  emptyViewport,
  nearestTraceIndex,
  pixelToData,
} from "./scene.js";
import { drawCloud, drawFitness, drawReplayFrame } from "./render.js";
import type { TracePayload } from "./types.js";

const api = new ApiClient("");
const controller = new InspectorController(api);

const runSelect = document.getElementById("run-select") as HTMLSelectElement;
const viewToggles = document.getElementById("view-toggles") as HTMLDivElement;
const slider = document.getElementById("generation-slider") as HTMLInputElement;
const genLabel = document.getElementById("generation-label") as HTMLSpanElement;
const playButton = document.getElementById("play-button") as HTMLButtonElement;
const cloudRow = document.getElementById("cloud-row") as HTMLDivElement;
const fitnessCanvas = document.getElementById("fitness-canvas") as HTMLCanvasElement;
const detailPanel = document.getElementById("detail-panel") as HTMLDivElement;
const banner = document.getElementById("error-banner") as HTMLDivElement;
const replayDet = document.getElementById("replay-deterministic") as HTMLButtonElement;
const replaySto = document.getElementById("replay-stochastic") as HTMLButtonElement;
const replayPanel = document.getElementById("replay-panel") as HTMLDivElement;
const replayCanvas = document.getElementById("replay-canvas") as HTMLCanvasElement;
const replayClose = document.getElementById("replay-close") as HTMLButtonElement;

const cloudCanvases = new Map<string, HTMLCanvasElement>();
const viewBounds = new Map<string, Viewport>();
let playbackTimer: number | null = null;
let replayTimer: number | null = null;

function showError(message: string): void {
  banner.textContent = message;
  banner.classList.remove("hidden");
  window.setTimeout(() => banner.classList.add("hidden"), 6000);
}

function syncViewToggles(): void {
  viewToggles.innerHTML = "";
  for (const view of controller.availableViews) {
    const label = document.createElement("label");
    const box = document.createElement("input");
    box.type = "checkbox";
    box.checked = controller.state.openViews.includes(view);
    box.addEventListener("change", () => controller.toggleView(view));
    label.appendChild(box);
    label.appendChild(document.createTextNode(view));
    viewToggles.appendChild(label);
  }
}

function syncCloudCanvases(): void {
  for (const [view, canvas] of [...cloudCanvases]) {
    if (!controller.state.openViews.includes(view)) {
      canvas.parentElement?.remove();
      cloudCanvases.delete(view);
    }
  }
  for (const view of controller.state.openViews) {
    if (cloudCanvases.has(view)) continue;
    const box = document.createElement("div");
    box.className = "cloud-box";
    const title = document.createElement("div");
    title.className = "cloud-title";
    title.textContent = view;
    const canvas = document.createElement("canvas");
    canvas.width = 420;
    canvas.height = 420;
    canvas.addEventListener("click", (event) => {
      const rect = canvas.getBoundingClientRect();
      const vp = viewBounds.get(view) ?? emptyViewport();
      const [x, y] = pixelToData(vp, canvas.width, canvas.height,
                                 event.offsetX * (canvas.width / rect.width),
                                 event.offsetY * (canvas.height / rect.height));
      // a click on an overlayed trajectory plays that trace; anything else
      // resolves to the nearest point server-side
      if (view === "identity" && controller.traces.length > 0) {
        const overlay = buildTraceOverlay(controller.traces);
        const threshold = (vp.xMax - vp.xMin) / 50;
        const hit = nearestTraceIndex(overlay, x, y, threshold);
        if (hit !== null) {
          startReplayAnimation(controller.traces[hit]);
          return;
        }
      }
      void controller.clickAt(view, x, y);
    });
    box.appendChild(title);
    box.appendChild(canvas);
    cloudRow.appendChild(box);
    cloudCanvases.set(view, canvas);
  }
}

function renderDetail(): void {
  const detail = controller.detail;
  if (detail === null) {
    detailPanel.innerHTML = "<em>click a point to inspect it</em>";
    replayDet.disabled = true;
    replaySto.disabled = true;
    return;
  }
  replayDet.disabled = false;
  replaySto.disabled = false;
  const who = detail.is_parent ? "parent" : `offspring ${detail.i}`;
  const coords = Object.entries(detail.coords)
    .map(([view, xy]) => `${view}: (${xy[0].toFixed(4)}, ${xy[1].toFixed(4)})`)
    .join("<br>");
  const bc = detail.bc.length <= 16
    ? detail.bc.map((v) => Number(v.toFixed(4))).join(", ")
    : detail.bc.slice(0, 16).map((v) => Number(v.toFixed(4))).join(", ")
      + ` … (${detail.bc.length} entries)`;
  detailPanel.innerHTML = `
    <div class="detail-title">generation ${detail.g}, ${who}</div>
    <div class="detail-fitness">fitness ${detail.fitness}</div>
    <div>${coords}</div>
    <div class="detail-bc">BC: [${bc}]</div>`;
}

function repaint(): void {
  const frame = controller.current;
  syncCloudCanvases();
  syncViewToggles();
  slider.max = String(Math.max(controller.state.generationCount - 1, 0));
  slider.value = String(controller.state.generation);
  genLabel.textContent =
    `${controller.state.generation} / ${Math.max(controller.state.generationCount - 1, 0)}`;
  playButton.textContent = controller.state.playback === "playing" ? "stop" : "play";
  if (frame !== null) {
    const overlay: Polyline[] = buildTraceOverlay(controller.traces);
    for (const [view, canvas] of cloudCanvases) {
      const payload = frame.slices.get(view);
      if (!payload) continue;
      const markers = buildCloudScene(payload, controller.state.selectedIndex);
      let vp = viewBounds.get(view) ?? emptyViewport();
      vp = mergeViewports(vp, boundsOf(markers.map((m) => [m.x, m.y] as [number, number])));
      viewBounds.set(view, vp);
      // trajectory overlays live in BC space: only identity views share it
      const traceLines = view === "identity" ? overlay : [];
      const ctx = canvas.getContext("2d")!;
      drawCloud(ctx, vp, markers, traceLines);
    }
  }
  drawFitness(fitnessCanvas.getContext("2d")!, controller.fitness,
              controller.state.generation);
  renderDetail();
}

function startReplayAnimation(trace: TracePayload): void {
  if (replayTimer !== null) window.clearInterval(replayTimer);
  replayPanel.classList.remove("hidden");
  const envId = controller.manifest?.env_id ?? "point_walker";
  let frame = 0;
  const ctx = replayCanvas.getContext("2d")!;
  replayTimer = window.setInterval(() => {
    drawReplayFrame(ctx, trace, frame, envId);
    frame += Math.max(1, Math.round(trace.frames.length / (REPLAY_FPS * 8)));
    if (frame >= trace.frames.length) {
      drawReplayFrame(ctx, trace, trace.frames.length - 1, envId);
      window.clearInterval(replayTimer!);
      replayTimer = null;
    }
  }, 1000 / REPLAY_FPS);
}

async function bootstrap(): Promise<void> {
  controller.onChange = repaint;
  controller.onError = showError;
  let runs;
  try {
    runs = await api.listRuns();
  } catch (err) {
    showError(`failed to list runs: ${err}`);
    return;
  }
  runSelect.innerHTML = "";
  for (const manifest of runs) {
    const option = document.createElement("option");
    option.value = manifest.run_id;
    option.textContent =
      `${manifest.run_id} (${manifest.algo}/${manifest.env_id})`;
    runSelect.appendChild(option);
  }
  runSelect.addEventListener("change", () => void controller.openRun(runSelect.value));
  slider.addEventListener("input", () =>
    void controller.loadGeneration(Number(slider.value)));
  playButton.addEventListener("click", () => {
    if (controller.state.playback === "playing") {
      controller.stopCloudPlayback();
    } else {
      controller.startCloudPlayback();
      if (playbackTimer !== null) window.clearInterval(playbackTimer);
      playbackTimer = window.setInterval(() => {
        if (controller.state.playback !== "playing") {
          window.clearInterval(playbackTimer!);
          playbackTimer = null;
          return;
        }
        void controller.playbackTick();
      }, 1000 / CLOUD_PLAYBACK_FPS);
    }
  });
  replayDet.addEventListener("click", () => void controller.requestRollouts(false));
  replaySto.addEventListener("click", () => void controller.requestRollouts(true));
  replayClose.addEventListener("click", () => {
    replayPanel.classList.add("hidden");
    if (replayTimer !== null) {
      window.clearInterval(replayTimer);
      replayTimer = null;
    }
  });
  // clicking an overlayed polyline (identity view) opens its animation;
  // the detail panel also offers the first trace directly
  document.getElementById("replay-animate")!.addEventListener("click", () => {
    if (controller.traces.length > 0) startReplayAnimation(controller.traces[0]);
  });
  if (runs.length > 0) {
    runSelect.value = runs[0].run_id;
    await controller.openRun(runs[0].run_id);
  }
}

void bootstrap();
