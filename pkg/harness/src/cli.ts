#!/usr/bin/env node
/**
 * moltext-harness <train|generate|truncate|predictions> [flags]
 *
 * Train flags mirror the external trainer's command line; generation
 * flags mirror the published generation configuration. `truncate` and
 * `predictions` post-process raw completions into the evaluator's TSV.
 */

import { readFileSync } from "node:fs";

import { generate } from "./generator.js";
import { emitPredictions } from "./predictions.js";
import { fineTune } from "./trainer.js";
import { truncateOutput } from "./truncate.js";
import { makeGenSpec, makeTrainSpec } from "./types.js";

function parseFlags(argv: string[]): Map<string, string> {
  const flags = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    const value = argv[i + 1];
    if (!key?.startsWith("--") || value === undefined) {
      throw new UsageError(`malformed flag pair near '${key ?? ""}'`);
    }
    flags.set(key.slice(2), value);
  }
  return flags;
}

class UsageError extends Error {}

function need(flags: Map<string, string>, key: string): string {
  const value = flags.get(key);
  if (value === undefined) throw new UsageError(`missing required --${key}`);
  return value;
}

function cmdTrain(flags: Map<string, string>): void {
  const spec = makeTrainSpec(
    {
      baseModel: need(flags, "model_name_or_path"),
      datasetPath: need(flags, "data_path"),
      outputDir: need(flags, "output_dir"),
    },
    {
      ...(flags.has("num_train_epochs") && { epochs: Number(flags.get("num_train_epochs")) }),
      ...(flags.has("learning_rate") && { learningRate: Number(flags.get("learning_rate")) }),
      ...(flags.has("per_device_train_batch_size") && {
        perDeviceBatchSize: Number(flags.get("per_device_train_batch_size")),
      }),
      ...(flags.has("gradient_accumulation_steps") && {
        gradientAccumulation: Number(flags.get("gradient_accumulation_steps")),
      }),
      ...(flags.has("warmup_ratio") && { warmupRatio: Number(flags.get("warmup_ratio")) }),
      ...(flags.has("lr_scheduler_type") && { scheduleName: flags.get("lr_scheduler_type")! }),
      ...(flags.has("weight_decay") && { weightDecay: Number(flags.get("weight_decay")) }),
      ...(flags.has("seed") && { seed: Number(flags.get("seed")) }),
      ...(flags.has("bf16") && { bf16: flags.get("bf16") === "True" }),
      ...(flags.has("tf32") && { tf32: flags.get("tf32") === "True" }),
    },
  );
  const result = fineTune(spec);
  console.log(`checkpoint: ${result.checkpointDir}`);
  console.log(`log: ${result.logPath}`);
}

function cmdGenerate(flags: Map<string, string>): void {
  const spec = makeGenSpec({
    ...(flags.has("num_beams") && { numBeams: Number(flags.get("num_beams")) }),
    ...(flags.has("repetition_penalty") && {
      repetitionPenalty: Number(flags.get("repetition_penalty")),
    }),
    ...(flags.has("do_sample") && { doSample: flags.get("do_sample") === "True" }),
    ...(flags.has("early_stopping") && { earlyStopping: flags.get("early_stopping") === "True" }),
    ...(flags.has("max_time") && { maxTimeSeconds: Number(flags.get("max_time")) }),
    ...(flags.has("length_penalty") && { lengthPenalty: Number(flags.get("length_penalty")) }),
    ...(flags.has("max_new_tokens") && { maxNewTokens: Number(flags.get("max_new_tokens")) }),
  });
  const result = generate(
    need(flags, "model_dir"),
    need(flags, "prompt_file"),
    need(flags, "output_file"),
    spec,
  );
  console.log(`completions: ${result.completions.length} (timed out: ${result.timedOut})`);
}

function cmdTruncate(flags: Map<string, string>): void {
  const family = need(flags, "family");
  const raw = readFileSync(need(flags, "raw_file"), "utf-8");
  const lines = raw.length === 0 ? [] : raw.replace(/\n$/, "").split("\n");
  for (const line of lines) {
    console.log(truncateOutput(family, line.replace(/\\n/g, "\n")));
  }
}

function cmdPredictions(flags: Map<string, string>): void {
  const outputs = readLines(need(flags, "outputs"));
  const references = readLines(need(flags, "references"));
  emitPredictions(outputs, references, need(flags, "out"));
  console.log(`wrote ${outputs.length} rows to ${flags.get("out")}`);
}

function readLines(path: string): string[] {
  const text = readFileSync(path, "utf-8");
  return text.length === 0 ? [] : text.replace(/\n$/, "").split("\n");
}

export function main(argv: string[]): number {
  const [command, ...rest] = argv;
  try {
    const flags = parseFlags(rest);
    switch (command) {
      case "train":
        cmdTrain(flags);
        return 0;
      case "generate":
        cmdGenerate(flags);
        return 0;
      case "truncate":
        cmdTruncate(flags);
        return 0;
      case "predictions":
        cmdPredictions(flags);
        return 0;
      default:
        console.error(
          "usage: moltext-harness <train|generate|truncate|predictions> [flags]",
        );
        return 2;
    }
  } catch (error) {
    if (error instanceof UsageError) {
      console.error(`usage error: ${error.message}`);
      return 2;
    }
    console.error(`error\t${(error as Error).name}\t${(error as Error).message}`);
    return 1;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url.endsWith(process.argv[1].split("/").pop() ?? "");
if (invokedDirectly) {
  process.exit(main(process.argv.slice(2)));
}
