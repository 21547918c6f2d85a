/**
 * Bridge to the evaluator: id<TAB>prediction<TAB>reference rows.
 */

import { writeFileSync } from "node:fs";

export class LengthMismatchError extends Error {
  constructor(outputs: number, references: number) {
    super(`got ${outputs} outputs but ${references} references`);
    this.name = "LengthMismatchError";
  }
}

/** Tabs and newlines cannot survive a TSV row; flatten them to spaces. */
function sanitize(text: string): string {
  return text.replace(/[\t\r\n]+/g, " ").trim();
}

export function predictionRows(
  outputs: string[],
  references: string[],
  ids?: number[],
): string[] {
  if (outputs.length !== references.length) {
    throw new LengthMismatchError(outputs.length, references.length);
  }
  if (ids !== undefined && ids.length !== outputs.length) {
    throw new LengthMismatchError(outputs.length, ids.length);
  }
  return outputs.map((output, i) => {
    const id = ids?.[i] ?? i + 1;
    return `${id}\t${sanitize(output)}\t${sanitize(references[i])}`;
  });
}

export function emitPredictions(
  outputs: string[],
  references: string[],
  path: string,
  ids?: number[],
): void {
  const rows = predictionRows(outputs, references, ids);
  writeFileSync(path, rows.map((r) => r + "\n").join(""), "utf-8");
}
