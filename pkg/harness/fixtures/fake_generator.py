"""Deterministic stand-in generator used by the harness unit tests.

Each completion is a pure function of the prompt text, so repeated runs
over the same prompt file produce byte-identical outputs.
"""

import sys
import zlib


def main() -> None:
    args = sys.argv[1:]
    flags = dict(zip(args[::2], args[1::2]))
    with open(flags["--prompt_file"], encoding="utf-8") as fh:
        prompts = [line.rstrip("\n") for line in fh if line.rstrip("\n")]
    with open(flags["--output_file"], "w", encoding="utf-8") as out:
        for prompt in prompts:
            token = zlib.crc32(prompt.encode()) % 100000
            out.write(f"{prompt} FAKE-ANSWER-{token}\n")
    print(f"generated={len(prompts)} empty=0")


if __name__ == "__main__":
    main()
