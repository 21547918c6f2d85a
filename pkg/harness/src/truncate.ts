/**
 * Model-family truncation: the answer is the text after a family-specific
 * sentinel in the raw completion.
 */

const FAMILY_SENTINELS: ReadonlyMap<string, string> = new Map([
  ["opt", "### Response:"],
  ["bloom", "### Response:"],
  ["llama2", "### Instruction:"],
  ["mistral", "### Instruction:"],
  ["gpt2", "<|endoftext|>"],
  ["gpt-neo", "<|endoftext|>"],
  ["tinystories", "<|endoftext|>"],
]);

export class UnknownFamilyError extends Error {
  constructor(family: string) {
    super(`no truncation rule for model family '${family}'`);
    this.name = "UnknownFamilyError";
  }
}

export function supportedFamilies(): string[] {
  return [...FAMILY_SENTINELS.keys()];
}

export function sentinelFor(family: string): string {
  const sentinel = FAMILY_SENTINELS.get(family);
  if (sentinel === undefined) throw new UnknownFamilyError(family);
  return sentinel;
}

/**
 * Substring strictly after the first sentinel occurrence, trimmed; the
 * whole trimmed text when the sentinel is absent. Idempotent as long as
 * the answer region itself carries no further sentinel.
 */
export function truncateOutput(family: string, raw: string): string {
  const sentinel = sentinelFor(family);
  const at = raw.indexOf(sentinel);
  if (at === -1) return raw.trim();
  return raw.slice(at + sentinel.length).trim();
}
