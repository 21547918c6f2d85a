/**
 * End-to-end smoke: build datasets with the evaluator package's CLI,
 * fine-tune a tiny local model through the wrapped trainer, generate
 * deterministically, and score predictions — asserting the fine-tuned
 * model strictly beats its own pre-fine-tuning baseline, and that two
 * generation runs with sampling off produce identical reports.
 *
 * Skipped when HARNESS_SKIP_SMOKE=1 or torch is unavailable.
 */

import assert from "node:assert/strict";
import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";
import { test } from "node:test";

import {
  fineTune,
  generate,
  emitPredictions,
  makeGenSpec,
  makeTrainSpec,
  truncateOutput,
} from "../src/index.js";

const SYLLABLES = ["meth", "eth", "prop", "but", "pent", "hex", "hept", "oct"];

function synthRow(i: number): { smiles: string; name: string } {
  const bits = i.toString(2).padStart(11, "0");
  const chain = [...bits].map((b) => (b === "1" ? "C(C)" : "C")).join("");
  const smiles = `C${chain}O`;
  const name =
    `${SYLLABLES[i % 8]}yl-${SYLLABLES[(i >> 3) % 8]}oxy-` +
    `${SYLLABLES[(i >> 6) % 8]}ane-${i % 10}-ol`;
  return { smiles, name };
}

/** Tiny seeded generator so the pretraining corpus is reproducible. */
function lcg(seed: number): () => number {
  let state = seed >>> 0;
  return () => {
    state = (state * 1664525 + 1013904223) >>> 0;
    return state / 2 ** 32;
  };
}

/**
 * Generic instruction corpus for local pretraining: the offline stand-in
 * for a downloadable pretrained base. Content is task-free gibberish in
 * the instruction format, plus one charset document so the character
 * vocabulary covers later fine-tuning data.
 */
function pretrainCorpus(): { instruction: string; input: string; output: string }[] {
  const rand = lcg(7);
  const vowels = "aeiou";
  const consonants = "bcdfghklmnprstvz";
  const word = () => {
    const n = 2 + Math.floor(rand() * 3);
    let out = "";
    for (let i = 0; i < n; i++) {
      out +=
        consonants[Math.floor(rand() * consonants.length)] +
        vowels[Math.floor(rand() * vowels.length)];
    }
    return out;
  };
  const verbs = ["Repeat", "Describe", "Summarize", "Label", "Echo", "Classify"];
  const nouns = ["word", "token", "string", "item", "entry", "record"];
  const rows = [];
  for (let i = 0; i < 900; i++) {
    const gibberish = Array.from({ length: 2 + Math.floor(rand() * 4) }, word).join(" ");
    const answerWords = Array.from({ length: 1 + Math.floor(rand() * 3) }, word);
    const suffix = rand() < 0.5 ? `-${Math.floor(rand() * 10)}` : "";
    rows.push({
      instruction: `${verbs[Math.floor(rand() * verbs.length)]} the following ` +
        `${nouns[Math.floor(rand() * nouns.length)]}: ${gibberish}`,
      input: "",
      output: answerWords.join("-") + suffix,
    });
  }
  const charset =
    "0123456789 ABCDEFGHIJKLMNOPQRSTUVWXYZ abcdefghijklmnopqrstuvwxyz -,.()[]'#:=+|<>/\\";
  rows.push({ instruction: `Index the following charset: ${charset}`, input: "", output: charset });
  return rows;
}

function primaryCli(args: string[], cwd: string): string {
  const run = spawnSync("python3", ["-m", "moltext.cli", ...args], {
    encoding: "utf-8",
    cwd,
    maxBuffer: 64 << 20,
  });
  assert.equal(run.status, 0, `moltext ${args[0]} failed: ${run.stderr}`);
  return run.stdout;
}

function evaluate(predictions: string, outPrefix: string, cwd: string): number {
  const stdout = primaryCli(
    ["eval", "--predictions", predictions, "--out", outPrefix],
    cwd,
  );
  const match = /edit=([0-9.]+)/.exec(stdout);
  assert.ok(match, `no edit score in: ${stdout}`);
  return Number(match[1]);
}

function torchAvailable(): boolean {
  return (
    spawnSync("python3", ["-c", "import torch, transformers"], {
      encoding: "utf-8",
    }).status === 0
  );
}

test("smoke fine-tune beats its own baseline and inference is deterministic", { timeout: 30 * 60 * 1000 }, (t) => {
  if (process.env.HARNESS_SKIP_SMOKE === "1") {
    t.skip("HARNESS_SKIP_SMOKE=1");
    return;
  }
  if (!torchAvailable()) {
    t.skip("torch/transformers unavailable");
    return;
  }

  const dir = mkdtempSync(join(tmpdir(), "harness-smoke-"));

  // Parent set -> 80/20 split -> 1,000-example train cohort and 100
  // held-out evaluation rows, all through the evaluator package's CLI.
  const parent = join(dir, "parent.tsv");
  writeFileSync(
    parent,
    Array.from({ length: 1300 }, (_, i) => {
      const { smiles, name } = synthRow(i);
      return `${i + 1}\t${smiles}\t${name}\n`;
    }).join(""),
  );
  primaryCli(
    ["split", "--parent", parent, "--ratio", "0.8", "--seed", "42",
     "--out-train", join(dir, "pool.tsv"), "--out-test", join(dir, "test.tsv")],
    dir,
  );
  primaryCli(
    ["build", "--parent", join(dir, "pool.tsv"), "--n", "1000", "--seed", "42",
     "--direction", "forward", "--out", join(dir, "train.json")],
    dir,
  );
  primaryCli(
    ["build", "--parent", join(dir, "test.tsv"), "--n", "100", "--seed", "7",
     "--direction", "forward", "--out", join(dir, "eval.json"),
     "--prompts", join(dir, "prompts.txt")],
    dir,
  );
  const references = (
    JSON.parse(readFileSync(join(dir, "eval.json"), "utf-8")) as {
      output: string;
    }[]
  ).map((row) => row.output);
  assert.equal(references.length, 100);

  // The pretrained base: no checkpoint can be downloaded here, so the
  // same external trainer first pretrains a tiny character model on a
  // generic instruction corpus (higher learning rate, more epochs) to
  // stand in for a pretrained foundational model.
  const baseDir = join(dir, "ckpt-base");
  writeFileSync(join(dir, "pretrain.json"), JSON.stringify(pretrainCorpus()));
  const pretrain = spawnSync(
    "python3",
    [
      join(process.cwd(), "external/train.py"),
      "--model_name_or_path", "tiny-char-gpt2-4x128",
      "--data_path", join(dir, "pretrain.json"),
      "--output_dir", baseDir,
      "--num_train_epochs", "10",
      "--learning_rate", "0.001",
      "--seed", "42",
    ],
    { encoding: "utf-8", maxBuffer: 64 << 20 },
  );
  assert.equal(pretrain.status, 0, pretrain.stderr);

  const genSpec = makeGenSpec({ maxNewTokens: 64 });

  const scoreCheckpoint = (checkpoint: string, tag: string): number => {
    const raw = join(dir, `raw-${tag}.txt`);
    generate(checkpoint, join(dir, "prompts.txt"), raw, genSpec);
    const completions = readFileSync(raw, "utf-8")
      .replace(/\n$/, "")
      .split("\n")
      .map((line) => line.replace(/\\n/g, "\n").replace(/\\\\/g, "\\"));
    const answers = completions.map((c) => truncateOutput("opt", c));
    const predictions = join(dir, `pred-${tag}.tsv`);
    emitPredictions(answers, references, predictions);
    return evaluate(predictions, join(dir, `report-${tag}`), dir);
  };

  const baselineEdit = scoreCheckpoint(baseDir, "base");
  assert.ok(baselineEdit < 0.2, `baseline unexpectedly strong: ${baselineEdit}`);

  // Fine-tune with the published defaults on the 1,000-example cohort.
  const ftDir = join(dir, "ckpt-ft");
  const result = fineTune(
    makeTrainSpec({
      baseModel: baseDir,
      datasetPath: join(dir, "train.json"),
      outputDir: ftDir,
    }),
  );
  assert.ok(readFileSync(result.logPath, "utf-8").includes('"epochs": 3'));

  const tunedEdit = scoreCheckpoint(ftDir, "ft");
  console.log(`baseline edit=${baselineEdit} fine-tuned edit=${tunedEdit}`);
  assert.ok(
    tunedEdit > baselineEdit,
    `fine-tuned ${tunedEdit} must beat baseline ${baselineEdit}`,
  );

  // Inference determinism: a second generation run must reproduce the
  // prediction file and therefore the evaluation report byte for byte.
  const rawAgain = join(dir, "raw-ft2.txt");
  generate(ftDir, join(dir, "prompts.txt"), rawAgain, genSpec);
  assert.equal(
    readFileSync(rawAgain, "utf-8"),
    readFileSync(join(dir, "raw-ft.txt"), "utf-8"),
  );
  const completions = readFileSync(rawAgain, "utf-8")
    .replace(/\n$/, "")
    .split("\n")
    .map((line) => line.replace(/\\n/g, "\n").replace(/\\\\/g, "\\"));
  const answers = completions.map((c) => truncateOutput("opt", c));
  emitPredictions(answers, references, join(dir, "pred-ft2.tsv"));
  evaluate(join(dir, "pred-ft2.tsv"), join(dir, "report-ft2"), dir);
  assert.equal(
    readFileSync(join(dir, "report-ft2.summary.txt"), "utf-8"),
    readFileSync(join(dir, "report-ft.summary.txt"), "utf-8"),
  );
});
