/* Deterministic color scheme: hue rotates with the generation index, and
 * within a generation offspring intensity encodes the fitness-percentile
 * bin (0 faintest .. 4 strongest). */

export const HUE_STEP_DEGREES = 37;

export const BIN_ALPHAS = [0.2, 0.35, 0.5, 0.7, 1.0] as const;

export function generationHue(g: number): number {
  return (g * HUE_STEP_DEGREES) % 360;
}

export function offspringColor(g: number, bin: number): string {
  const alpha = BIN_ALPHAS[Math.min(Math.max(bin, 0), BIN_ALPHAS.length - 1)];
  return `hsla(${generationHue(g)}, 85%, 55%, ${alpha})`;
}

export function parentColor(g: number): string {
  return `hsl(${generationHue(g)}, 95%, 80%)`;
}

export function traceColor(replayIndex: number, total: number): string {
  const hue = total > 0 ? (replayIndex * 360) / total : 0;
  return `hsla(${hue}, 70%, 60%, 0.85)`;
}
