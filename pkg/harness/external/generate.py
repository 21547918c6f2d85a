"""Deterministic text generation over a trained checkpoint.

Reads one prompt per line, generates with the given beam configuration
(sampling off for reproducible output), and writes one completion per
line with newlines escaped. A prompt that fails or exceeds the time
budget yields an empty completion rather than aborting the run.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
from chartok import CharTokenizer  # noqa: E402


def parse_args():
    ap = argparse.ArgumentParser()
    ap.add_argument("--model_dir", required=True)
    ap.add_argument("--prompt_file", required=True)
    ap.add_argument("--output_file", required=True)
    ap.add_argument("--num_beams", type=int, default=2)
    ap.add_argument("--repetition_penalty", type=float, default=1.3)
    ap.add_argument("--do_sample", default="False")
    ap.add_argument("--early_stopping", default="True")
    ap.add_argument("--max_time", type=float, default=10.0)
    ap.add_argument("--length_penalty", type=float, default=0.4)
    ap.add_argument("--max_new_tokens", type=int, default=160)
    return ap.parse_args()


def main() -> None:
    args = parse_args()
    try:
        import torch
        from transformers import AutoModelForCausalLM, GenerationConfig
    except ImportError:
        raise SystemExit("torch/transformers are not available; cannot generate")

    torch.manual_seed(0)
    tokenizer = CharTokenizer.load(args.model_dir)
    model = AutoModelForCausalLM.from_pretrained(args.model_dir)
    model.eval()

    config_kwargs = dict(
        num_beams=args.num_beams,
        repetition_penalty=args.repetition_penalty,
        do_sample=args.do_sample == "True",
        max_time=args.max_time,
        max_new_tokens=args.max_new_tokens,
        eos_token_id=0,
        pad_token_id=0,
    )
    if args.num_beams > 1:
        config_kwargs["early_stopping"] = args.early_stopping == "True"
        config_kwargs["length_penalty"] = args.length_penalty
    generation_config = GenerationConfig(**config_kwargs)

    with open(args.prompt_file, encoding="utf-8") as fh:
        prompts = [line.rstrip("\n") for line in fh if line.rstrip("\n")]

    timed_out = 0
    with open(args.output_file, "w", encoding="utf-8") as out:
        for prompt in prompts:
            try:
                ids = torch.tensor([tokenizer.encode(prompt)], dtype=torch.long)
                ids = ids[:, -(model.config.n_positions - args.max_new_tokens):]
                with torch.no_grad():
                    result = model.generate(ids, generation_config=generation_config)
                text = tokenizer.decode(result[0].tolist())
            except Exception as exc:  # per-prompt failure -> empty completion
                print(f"prompt failed: {exc}", file=sys.stderr)
                text = ""
                timed_out += 1
            out.write(text.replace("\\", "\\\\").replace("\n", "\\n") + "\n")
    print(f"generated={len(prompts)} empty={timed_out}")


if __name__ == "__main__":
    main()
