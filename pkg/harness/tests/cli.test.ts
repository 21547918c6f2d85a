import assert from "node:assert/strict";
import { spawnSync } from "node:child_process";
import { mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join, resolve } from "node:path";
import { test } from "node:test";
import { fileURLToPath } from "node:url";

const HERE = dirname(fileURLToPath(import.meta.url));
const CLI = resolve(HERE, "../src/cli.js");

function run(args: string[]) {
  return spawnSync("node", [CLI, ...args], { encoding: "utf-8" });
}

test("unknown subcommand exits 2", () => {
  const result = run(["frobnicate"]);
  assert.equal(result.status, 2);
});

test("missing flag is a usage error", () => {
  const result = run(["generate", "--model_dir", "/nope"]);
  assert.equal(result.status, 2);
  assert.match(result.stderr, /missing required/);
});

test("truncate subcommand strips the family sentinel", () => {
  const dir = mkdtempSync(join(tmpdir(), "harness-cli-"));
  const raw = join(dir, "raw.txt");
  writeFileSync(raw, "prompt ### Response: pentan-1-ol\nplain text\n");
  const result = run(["truncate", "--family", "opt", "--raw_file", raw]);
  assert.equal(result.status, 0, result.stderr);
  assert.equal(result.stdout, "pentan-1-ol\nplain text\n");
});

test("predictions subcommand writes evaluator rows", () => {
  const dir = mkdtempSync(join(tmpdir(), "harness-cli-"));
  writeFileSync(join(dir, "outputs.txt"), "a\nb\n");
  writeFileSync(join(dir, "refs.txt"), "x\ny\n");
  const out = join(dir, "pred.tsv");
  const result = run([
    "predictions",
    "--outputs", join(dir, "outputs.txt"),
    "--references", join(dir, "refs.txt"),
    "--out", out,
  ]);
  assert.equal(result.status, 0, result.stderr);
  assert.equal(readFileSync(out, "utf-8"), "1\ta\tx\n2\tb\ty\n");
});

test("length mismatch exits 1 with a typed error line", () => {
  const dir = mkdtempSync(join(tmpdir(), "harness-cli-"));
  writeFileSync(join(dir, "outputs.txt"), "a\nb\n");
  writeFileSync(join(dir, "refs.txt"), "x\n");
  const result = run([
    "predictions",
    "--outputs", join(dir, "outputs.txt"),
    "--references", join(dir, "refs.txt"),
    "--out", join(dir, "pred.tsv"),
  ]);
  assert.equal(result.status, 1);
  assert.match(result.stderr, /LengthMismatchError/);
});
