/**
 * Deterministic generation driver: one completion per prompt line,
 * order preserved, sampling off by default so repeated runs over the
 * same checkpoint produce identical files.
 */

import { spawnSync } from "node:child_process";
import { existsSync, readFileSync } from "node:fs";
import { dirname, resolve } from "node:path";
import { fileURLToPath } from "node:url";

import { GenSpec, validateGenSpec } from "./types.js";

const HERE = dirname(fileURLToPath(import.meta.url));
export const DEFAULT_GENERATOR = ["python3", resolve(HERE, "../../external/generate.py")];

export interface GenerateResult {
  outputPath: string;
  completions: string[];
  timedOut: number;
}

export function buildGenerateArgs(
  modelDir: string,
  promptFile: string,
  outputPath: string,
  spec: GenSpec,
): string[] {
  validateGenSpec(spec);
  return [
    "--model_dir", modelDir,
    "--prompt_file", promptFile,
    "--output_file", outputPath,
    "--num_beams", String(spec.numBeams),
    "--repetition_penalty", String(spec.repetitionPenalty),
    "--do_sample", String(spec.doSample),
    "--early_stopping", String(spec.earlyStopping),
    "--max_time", String(spec.maxTimeSeconds),
    "--length_penalty", String(spec.lengthPenalty),
    "--max_new_tokens", String(spec.maxNewTokens),
  ];
}

export class GeneratorFailure extends Error {
  constructor(
    public readonly exitCode: number | null,
    public readonly stderr: string,
  ) {
    super(`generator exited with ${exitCode}: ${stderr.trim().slice(-800)}`);
    this.name = "GeneratorFailure";
  }
}

export function generate(
  modelDir: string,
  promptFile: string,
  outputPath: string,
  spec: GenSpec,
  generatorCommand: string[] = DEFAULT_GENERATOR,
): GenerateResult {
  if (!existsSync(modelDir)) {
    throw new GeneratorFailure(null, `model directory missing: ${modelDir}`);
  }
  const [command, ...prefix] = generatorCommand;
  const args = buildGenerateArgs(modelDir, promptFile, outputPath, spec);
  const run = spawnSync(command, [...prefix, ...args], {
    encoding: "utf-8",
    maxBuffer: 64 << 20,
  });
  if (run.status !== 0) {
    throw new GeneratorFailure(run.status, run.stderr ?? "");
  }
  const text = readFileSync(outputPath, "utf-8");
  // One completion per line; escaped newlines restored by consumers.
  const completions = text.length === 0 ? [] : text.replace(/\n$/, "").split("\n");
  const prompts = readFileSync(promptFile, "utf-8")
    .split("\n")
    .filter((line) => line.length > 0);
  if (completions.length !== prompts.length) {
    throw new GeneratorFailure(
      run.status,
      `generator wrote ${completions.length} completions for ${prompts.length} prompts`,
    );
  }
  const timedOut = completions.filter((c) => c.length === 0).length;
  return { outputPath, completions, timedOut };
}
