/**
 * Specs for fine-tuning and generation runs.
 *
 * Defaults mirror the published training command (3 epochs, lr 2e-5,
 * per-device batch 4, gradient accumulation 8, warmup ratio 0.03,
 * cosine schedule, zero weight decay, seed 42, bf16/tf32 on) and the
 * published generation configuration (2 beams, repetition penalty 1.3,
 * sampling off, early stopping on, 10 s per prompt, length penalty 0.4).
 */

export interface LoraSpec {
  rank: number;
  alpha: number;
  dropout: number;
  biasMode: "none" | "all" | "lora_only";
  targetLayers: string[];
}

export interface TrainSpec {
  baseModel: string;
  datasetPath: string;
  outputDir: string;
  epochs: number;
  learningRate: number;
  perDeviceBatchSize: number;
  gradientAccumulation: number;
  warmupRatio: number;
  scheduleName: string;
  weightDecay: number;
  seed: number;
  bf16: boolean;
  tf32: boolean;
  lora?: LoraSpec;
}

export interface GenSpec {
  numBeams: number;
  repetitionPenalty: number;
  doSample: boolean;
  earlyStopping: boolean;
  maxTimeSeconds: number;
  lengthPenalty: number;
  maxNewTokens: number;
}

export const TRAIN_DEFAULTS = {
  epochs: 3,
  learningRate: 2e-5,
  perDeviceBatchSize: 4,
  gradientAccumulation: 8,
  warmupRatio: 0.03,
  scheduleName: "cosine",
  weightDecay: 0.0,
  seed: 42,
  bf16: true,
  tf32: true,
} as const;

export const LORA_DEFAULTS = {
  rank: 8,
  alpha: 32,
  dropout: 0.05,
  biasMode: "none",
} as const;

export const GEN_DEFAULTS: GenSpec = {
  numBeams: 2,
  repetitionPenalty: 1.3,
  doSample: false,
  earlyStopping: true,
  maxTimeSeconds: 10,
  lengthPenalty: 0.4,
  maxNewTokens: 160,
};

export function makeTrainSpec(
  required: Pick<TrainSpec, "baseModel" | "datasetPath" | "outputDir">,
  overrides: Partial<TrainSpec> = {},
): TrainSpec {
  const spec: TrainSpec = { ...TRAIN_DEFAULTS, ...required, ...overrides };
  validateTrainSpec(spec);
  return spec;
}

export function validateTrainSpec(spec: TrainSpec): void {
  if (!Number.isInteger(spec.epochs) || spec.epochs < 1) {
    throw new Error(`epochs must be a positive integer, got ${spec.epochs}`);
  }
  if (spec.learningRate <= 0) {
    throw new Error(`learning rate must be positive, got ${spec.learningRate}`);
  }
  if (spec.perDeviceBatchSize < 1 || spec.gradientAccumulation < 1) {
    throw new Error("batch size and gradient accumulation must be >= 1");
  }
  if (spec.warmupRatio < 0 || spec.warmupRatio >= 1) {
    throw new Error(`warmup ratio out of range: ${spec.warmupRatio}`);
  }
}

export function makeGenSpec(overrides: Partial<GenSpec> = {}): GenSpec {
  const spec = { ...GEN_DEFAULTS, ...overrides };
  validateGenSpec(spec);
  return spec;
}

/**
 * Single-beam runs must turn early stopping and the length penalty off;
 * both settings only make sense with a beam to stop early or rescore.
 */
export function validateGenSpec(spec: GenSpec): void {
  if (!Number.isInteger(spec.numBeams) || spec.numBeams < 1) {
    throw new Error(`numBeams must be a positive integer, got ${spec.numBeams}`);
  }
  if (spec.numBeams === 1 && spec.earlyStopping) {
    throw new Error("numBeams=1 requires earlyStopping=false");
  }
  if (spec.numBeams === 1 && spec.lengthPenalty !== 1.0) {
    throw new Error("numBeams=1 requires lengthPenalty=1.0 (disabled)");
  }
  if (spec.maxTimeSeconds <= 0) {
    throw new Error("maxTimeSeconds must be positive");
  }
}
