/* Generation playback: step the slider automatically at a fixed frame
 * rate, visiting every generation in [from, to] exactly once, stoppable at
 * any frame. The tick arithmetic is pure; main.ts owns the timer. */

export const CLOUD_PLAYBACK_FPS = 8;
export const REPLAY_FPS = 30;

export function playbackSequence(from: number, to: number): number[] {
  const out: number[] = [];
  for (let g = from; g <= to; g++) out.push(g);
  return out;
}

export interface PlaybackStep {
  g: number;
  done: boolean;
}

/* The frame to render after `current`, and whether playback ends there. */
export function stepPlayback(current: number, to: number): PlaybackStep {
  if (current >= to) return { g: to, done: true };
  const next = current + 1;
  return { g: next, done: next >= to };
}
