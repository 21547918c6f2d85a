"""Offline stand-in for the public instruction fine-tuning script.

Accepts the same command-line surface as the published trainer command
and fine-tunes a small causal language model over an instruction JSON
file. Base models are either a local checkpoint directory or a fresh
tiny character-level model named `tiny-char-gpt2-<layers>x<width>`
(the offline substitute for downloading a pretrained tag).

Prints `trainable_params_pct=<float>` so wrappers can log it; with the
low-rank-adapter flags present only the adapter weights train.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))
from chartok import CharTokenizer  # noqa: E402

PROMPT = (
    "Below is an instruction that describes a task. "
    "Write a response that appropriately completes the request. "
    "### Instruction: {instruction} ### Response: {output}"
)
MAX_LEN = 320


def parse_args():
    ap = argparse.ArgumentParser()
    ap.add_argument("--model_name_or_path", required=True)
    ap.add_argument("--data_path", required=True)
    ap.add_argument("--bf16", default="False")
    ap.add_argument("--output_dir", required=True)
    ap.add_argument("--overwrite_output_dir", default="True")
    ap.add_argument("--num_train_epochs", type=int, default=3)
    ap.add_argument("--per_device_train_batch_size", type=int, default=4)
    ap.add_argument("--per_device_eval_batch_size", type=int, default=4)
    ap.add_argument("--gradient_accumulation_steps", type=int, default=8)
    ap.add_argument("--save_strategy", default="steps")
    ap.add_argument("--save_total_limit", type=int, default=1)
    ap.add_argument("--learning_rate", type=float, default=2e-5)
    ap.add_argument("--weight_decay", type=float, default=0.0)
    ap.add_argument("--warmup_ratio", type=float, default=0.03)
    ap.add_argument("--lr_scheduler_type", default="cosine")
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--logging_steps", type=int, default=1)
    ap.add_argument("--logging_dir", default="./logs")
    ap.add_argument("--tf32", default="False")
    ap.add_argument("--lora_r", type=int, default=None)
    ap.add_argument("--lora_alpha", type=float, default=32)
    ap.add_argument("--lora_dropout", type=float, default=0.05)
    ap.add_argument("--lora_bias", default="none")
    ap.add_argument("--lora_target_layers", default="attn")
    ap.add_argument("--init_only", default="False",
                    help="save the freshly initialized model without training")
    return ap.parse_args()


def build_model(tag: str, vocab_size: int):
    import torch
    from transformers import AutoModelForCausalLM, GPT2Config

    if Path(tag).is_dir():
        return AutoModelForCausalLM.from_pretrained(tag)
    if tag.startswith("tiny-char-gpt2-"):
        layers, width = tag.removeprefix("tiny-char-gpt2-").split("x")
        config = GPT2Config(
            vocab_size=vocab_size,
            n_positions=MAX_LEN,
            n_embd=int(width),
            n_layer=int(layers),
            n_head=max(2, int(width) // 32),
            bos_token_id=0,
            eos_token_id=0,
        )
        return AutoModelForCausalLM.from_config(config)
    raise SystemExit(f"cannot resolve base model {tag!r}: not a directory "
                     "and not a tiny-char-gpt2-<layers>x<width> tag")


class LoraLinear:
    """Wrap a linear-like module with a frozen base and trainable A/B."""

    def __init__(self, module, rank: int, alpha: float, dropout: float):
        import torch
        from torch import nn

        weight = module.weight
        # transformers Conv1D stores (in, out); nn.Linear stores (out, in).
        if weight.dim() != 2:
            raise ValueError("expected 2-D weight")
        in_dim, out_dim = (
            (weight.shape[0], weight.shape[1])
            if type(module).__name__ == "Conv1D"
            else (weight.shape[1], weight.shape[0])
        )
        self.a = nn.Parameter(torch.zeros(in_dim, rank))
        self.b = nn.Parameter(torch.zeros(rank, out_dim))
        nn.init.normal_(self.a, std=0.02)
        self.scale = alpha / rank
        self.drop = nn.Dropout(dropout)
        self.module = module
        self.is_conv1d = type(module).__name__ == "Conv1D"
        self.base_forward = module.forward
        module.forward = self.forward  # type: ignore[method-assign]

    def forward(self, x):
        base = self.base_forward(x)
        delta = self.drop(x) @ self.a @ self.b * self.scale
        return base + delta


def apply_lora(model, rank: int, alpha: float, dropout: float):
    wrapped = []
    for name, module in model.named_modules():
        if type(module).__name__ in ("Conv1D", "Linear") and (
            "attn" in name and any(k in name for k in ("c_attn", "c_proj", "q_", "k_", "v_", "o_"))
        ):
            wrapped.append(LoraLinear(module, rank, alpha, dropout))
    for param in model.parameters():
        param.requires_grad = False
    params = []
    for adapter in wrapped:
        adapter.a.requires_grad = True
        adapter.b.requires_grad = True
        params.extend([adapter.a, adapter.b])
    return params


def main() -> None:
    args = parse_args()
    try:
        import torch
    except ImportError:
        raise SystemExit("torch is not available; cannot train")
    from torch import nn

    torch.manual_seed(args.seed)
    with open(args.data_path, encoding="utf-8") as fh:
        dataset = json.load(fh)
    if not dataset:
        raise SystemExit("empty dataset")
    texts = [
        PROMPT.format(instruction=row["instruction"], output=row["output"])
        for row in dataset
    ]

    out_dir = Path(args.output_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    if Path(args.model_name_or_path).is_dir():
        tokenizer = CharTokenizer.load(args.model_name_or_path)
    else:
        tokenizer = CharTokenizer.from_corpus(texts)
    model = build_model(args.model_name_or_path, tokenizer.vocab_size)

    lora_params = None
    if args.lora_r:
        lora_params = apply_lora(model, args.lora_r, args.lora_alpha, args.lora_dropout)
    total = sum(p.numel() for p in model.parameters())
    trainable = sum(p.numel() for p in model.parameters() if p.requires_grad)
    if lora_params is not None:
        trainable = sum(p.numel() for p in lora_params)
    print(f"total_params={total} trainable_params_pct={100.0 * trainable / total:.2f}")

    if args.init_only == "True":
        model.save_pretrained(out_dir)
        tokenizer.save(out_dir)
        print("initialized model saved without training")
        return
    if args.num_train_epochs < 1:
        raise SystemExit("num_train_epochs must be >= 1")

    encoded = []
    for text in texts:
        ids = tokenizer.encode(text)[: MAX_LEN - 1] + [tokenizer.eos_id]
        encoded.append(torch.tensor(ids, dtype=torch.long))

    params = lora_params if lora_params is not None else list(model.parameters())
    optimizer = torch.optim.AdamW(
        params, lr=args.learning_rate, weight_decay=args.weight_decay
    )
    batches_per_epoch = math.ceil(len(encoded) / args.per_device_train_batch_size)
    total_updates = max(
        1,
        math.ceil(batches_per_epoch / args.gradient_accumulation_steps)
        * args.num_train_epochs,
    )
    warmup = max(1, int(total_updates * args.warmup_ratio))

    def lr_scale(update: int) -> float:
        if update < warmup:
            return (update + 1) / warmup
        if args.lr_scheduler_type != "cosine":
            return 1.0
        progress = (update - warmup) / max(1, total_updates - warmup)
        return 0.5 * (1.0 + math.cos(math.pi * min(1.0, progress)))

    model.train()
    update = 0
    generator = torch.Generator().manual_seed(args.seed)
    for epoch in range(args.num_train_epochs):
        order = torch.randperm(len(encoded), generator=generator).tolist()
        optimizer.zero_grad()
        for step, start in enumerate(range(0, len(order), args.per_device_train_batch_size)):
            batch_ids = [encoded[i] for i in order[start : start + args.per_device_train_batch_size]]
            width = max(len(t) for t in batch_ids)
            input_ids = torch.full((len(batch_ids), width), tokenizer.eos_id, dtype=torch.long)
            labels = torch.full((len(batch_ids), width), -100, dtype=torch.long)
            for row, ids in enumerate(batch_ids):
                input_ids[row, : len(ids)] = ids
                labels[row, : len(ids)] = ids
            loss = model(input_ids=input_ids, labels=labels).loss
            (loss / args.gradient_accumulation_steps).backward()
            if (step + 1) % args.gradient_accumulation_steps == 0:
                for group in optimizer.param_groups:
                    group["lr"] = args.learning_rate * lr_scale(update)
                optimizer.step()
                optimizer.zero_grad()
                update += 1
            if step % max(1, args.logging_steps * 25) == 0:
                print(f"epoch={epoch} step={step} loss={loss.item():.4f}", flush=True)
        # Flush a trailing partial accumulation window.
        if len(order) % (args.per_device_train_batch_size * args.gradient_accumulation_steps):
            for group in optimizer.param_groups:
                group["lr"] = args.learning_rate * lr_scale(update)
            optimizer.step()
            optimizer.zero_grad()
            update += 1

    model.save_pretrained(out_dir)
    tokenizer.save(out_dir)
    print(f"saved checkpoint to {out_dir}")


if __name__ == "__main__":
    main()
