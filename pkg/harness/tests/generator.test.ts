import assert from "node:assert/strict";
import { mkdirSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join, resolve } from "node:path";
import { test } from "node:test";
import { fileURLToPath } from "node:url";

import {
  GeneratorFailure,
  buildGenerateArgs,
  generate,
  makeGenSpec,
} from "../src/index.js";

const HERE = dirname(fileURLToPath(import.meta.url));
const FAKE_GENERATOR = ["python3", resolve(HERE, "../../fixtures/fake_generator.py")];


function workspace(prompts: string[]) {
  const dir = mkdtempSync(join(tmpdir(), "harness-gen-"));
  const modelDir = join(dir, "model");
  mkdirSync(modelDir);
  const promptFile = join(dir, "prompts.txt");
  writeFileSync(promptFile, prompts.map((p) => p + "\n").join(""));
  return { dir, modelDir, promptFile };
}

test("argument assembly carries every generation knob", () => {
  const args = buildGenerateArgs("/m", "/p", "/o", makeGenSpec());
  for (const flag of [
    "--num_beams",
    "--repetition_penalty",
    "--do_sample",
    "--early_stopping",
    "--max_time",
    "--length_penalty",
  ]) {
    assert.ok(args.includes(flag), flag);
  }
  assert.equal(args[args.indexOf("--num_beams") + 1], "2");
  assert.equal(args[args.indexOf("--repetition_penalty") + 1], "1.3");
  assert.equal(args[args.indexOf("--do_sample") + 1], "false");
});

test("same inputs twice produce byte-identical outputs", () => {
  const { dir, modelDir, promptFile } = workspace(["alpha prompt", "beta prompt"]);
  const spec = makeGenSpec();
  const outA = join(dir, "a.txt");
  const outB = join(dir, "b.txt");
  const first = generate(modelDir, promptFile, outA, spec, FAKE_GENERATOR);
  const second = generate(modelDir, promptFile, outB, spec, FAKE_GENERATOR);
  assert.deepEqual(first.completions, second.completions);
  assert.equal(readFileSync(outA, "utf-8"), readFileSync(outB, "utf-8"));
});

test("order is preserved, one completion per prompt", () => {
  const prompts = ["p-one", "p-two", "p-three"];
  const { dir, modelDir, promptFile } = workspace(prompts);
  const result = generate(modelDir, promptFile, join(dir, "o.txt"), makeGenSpec(), FAKE_GENERATOR);
  assert.equal(result.completions.length, 3);
  result.completions.forEach((completion, i) => {
    assert.ok(completion.startsWith(prompts[i]), completion);
  });
});

test("empty prompt file yields an empty output file", () => {
  const { dir, modelDir, promptFile } = workspace([]);
  const result = generate(modelDir, promptFile, join(dir, "o.txt"), makeGenSpec(), FAKE_GENERATOR);
  assert.deepEqual(result.completions, []);
  assert.equal(readFileSync(join(dir, "o.txt"), "utf-8"), "");
});

test("missing model directory fails before spawning", () => {
  const { dir, promptFile } = workspace(["x"]);
  assert.throws(
    () => generate(join(dir, "nope"), promptFile, join(dir, "o.txt"), makeGenSpec(), FAKE_GENERATOR),
    GeneratorFailure,
  );
});
