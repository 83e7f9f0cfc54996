/* Payload shapes mirroring the inspector API. */

export interface Manifest {
  run_id: string;
  algo: string;
  env_id: string;
  config: Record<string, unknown>;
  bc_dimension: number;
  layer_sizes: number[];
  generations_completed: number;
  complete: boolean;
}

export interface SlicePointPayload {
  index: number; // -1 = parent
  coords: [number, number];
  fitness: number;
  bin: number; // 0..4
  is_parent: boolean;
}

export interface GenerationPayload {
  g: number;
  points: SlicePointPayload[];
}

export interface FitnessPayload {
  parent_fitness: number[];
}

export interface ViewsPayload {
  views: string[];
}

export interface FramePayload {
  t: number;
  state: number[];
  action: number[] | number;
  reward: number;
}

export interface TracePayload {
  frames: FramePayload[];
  final_bc: number[];
  fitness: number;
}

export interface RolloutResponse {
  traces: TracePayload[];
}

export interface RolloutRequestBody {
  g: number;
  i: number;
  stochastic: boolean;
  count: number;
}

export interface PointDetailPayload {
  g: number;
  i: number;
  fitness: number;
  bc: number[];
  coords: Record<string, [number, number]>;
  spec: Record<string, number | null> | null;
  rollout_seed: number | null;
  is_parent: boolean;
}

export interface NearestPayload {
  index: number;
}
