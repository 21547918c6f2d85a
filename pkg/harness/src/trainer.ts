/**
 * Argument assembly and process supervision for the external trainer.
 *
 * The trainer itself is wrapped, never reimplemented: this module turns
 * a TrainSpec into the external command's flag list, runs it, surfaces
 * failures verbatim, and leaves an effective-hyperparameter log next to
 * the checkpoint.
 */

import { spawnSync } from "node:child_process";
import { existsSync, mkdirSync, writeFileSync } from "node:fs";
import { dirname, join, resolve } from "node:path";
import { fileURLToPath } from "node:url";

import { TrainSpec, validateTrainSpec } from "./types.js";

const HERE = dirname(fileURLToPath(import.meta.url));
export const DEFAULT_TRAINER = ["python3", resolve(HERE, "../../external/train.py")];

export interface TrainResult {
  checkpointDir: string;
  logPath: string;
  trainableParamsPct?: number;
  stdout: string;
}

/** The external command's flag list, one flag per hyperparameter. */
export function buildTrainArgs(spec: TrainSpec): string[] {
  validateTrainSpec(spec);
  const args = [
    "--model_name_or_path", spec.baseModel,
    "--data_path", spec.datasetPath,
    "--bf16", String(spec.bf16),
    "--output_dir", spec.outputDir,
    "--num_train_epochs", String(spec.epochs),
    "--per_device_train_batch_size", String(spec.perDeviceBatchSize),
    "--gradient_accumulation_steps", String(spec.gradientAccumulation),
    "--learning_rate", String(spec.learningRate),
    "--weight_decay", String(spec.weightDecay),
    "--warmup_ratio", String(spec.warmupRatio),
    "--lr_scheduler_type", spec.scheduleName,
    "--seed", String(spec.seed),
    "--tf32", String(spec.tf32),
  ];
  if (spec.lora) {
    args.push(
      "--lora_r", String(spec.lora.rank),
      "--lora_alpha", String(spec.lora.alpha),
      "--lora_dropout", String(spec.lora.dropout),
      "--lora_bias", spec.lora.biasMode,
      "--lora_target_layers", spec.lora.targetLayers.join(","),
    );
  }
  return args;
}

export class TrainerFailure extends Error {
  constructor(
    public readonly exitCode: number | null,
    public readonly stderr: string,
  ) {
    super(`trainer exited with ${exitCode}: ${stderr.trim().slice(-800)}`);
    this.name = "TrainerFailure";
  }
}

export function fineTune(
  spec: TrainSpec,
  trainerCommand: string[] = DEFAULT_TRAINER,
): TrainResult {
  const args = buildTrainArgs(spec);
  mkdirSync(spec.outputDir, { recursive: true });
  const [command, ...prefix] = trainerCommand;
  const run = spawnSync(command, [...prefix, ...args], {
    encoding: "utf-8",
    maxBuffer: 64 << 20,
  });
  if (run.status !== 0) {
    throw new TrainerFailure(run.status, run.stderr ?? "");
  }
  if (!existsSync(spec.outputDir)) {
    throw new TrainerFailure(0, "trainer reported success but left no checkpoint");
  }
  const pctMatch = /trainable_params_pct=([0-9.]+)/.exec(run.stdout ?? "");
  const log = {
    baseModel: spec.baseModel,
    datasetPath: spec.datasetPath,
    epochs: spec.epochs,
    learningRate: spec.learningRate,
    perDeviceBatchSize: spec.perDeviceBatchSize,
    gradientAccumulation: spec.gradientAccumulation,
    warmupRatio: spec.warmupRatio,
    scheduleName: spec.scheduleName,
    weightDecay: spec.weightDecay,
    seed: spec.seed,
    bf16: spec.bf16,
    tf32: spec.tf32,
    lora: spec.lora ?? null,
    trainableParamsPct: pctMatch ? Number(pctMatch[1]) : null,
    trainerCommand: [...trainerCommand],
  };
  const logPath = join(spec.outputDir, "train_log.json");
  writeFileSync(logPath, JSON.stringify(log, null, 2) + "\n", "utf-8");
  return {
    checkpointDir: spec.outputDir,
    logPath,
    trainableParamsPct: pctMatch ? Number(pctMatch[1]) : undefined,
    stdout: run.stdout ?? "",
  };
}
