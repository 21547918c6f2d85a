"""Byte-simple character tokenizer for the offline tiny-model stack.

Vocabulary = sorted unique characters of the training corpus plus a
combined eos/pad token at id 0 and an <unk> at id 1. Stored as vocab.json
inside the checkpoint directory so generation can reload it.
"""

from __future__ import annotations

import json
from pathlib import Path

EOS_TOKEN = "<|endoftext|>"
UNK_TOKEN = "<unk>"


class CharTokenizer:
    def __init__(self, chars: list[str]):
        self.itos = [EOS_TOKEN, UNK_TOKEN] + chars
        self.stoi = {ch: i for i, ch in enumerate(self.itos)}

    @classmethod
    def from_corpus(cls, texts: list[str]) -> "CharTokenizer":
        chars = sorted({ch for text in texts for ch in text})
        return cls(chars)

    @classmethod
    def load(cls, model_dir: str | Path) -> "CharTokenizer":
        with open(Path(model_dir) / "vocab.json", encoding="utf-8") as fh:
            itos = json.load(fh)
        tok = cls.__new__(cls)
        tok.itos = itos
        tok.stoi = {ch: i for i, ch in enumerate(itos)}
        return tok

    def save(self, model_dir: str | Path) -> None:
        with open(Path(model_dir) / "vocab.json", "w", encoding="utf-8") as fh:
            json.dump(self.itos, fh, ensure_ascii=False)

    @property
    def eos_id(self) -> int:
        return 0

    @property
    def vocab_size(self) -> int:
        return len(self.itos)

    def encode(self, text: str) -> list[int]:
        unk = self.stoi[UNK_TOKEN]
        return [self.stoi.get(ch, unk) for ch in text]

    def decode(self, ids: list[int]) -> str:
        out = []
        for i in ids:
            if i == self.eos_id:
                break
            token = self.itos[i] if 0 <= i < len(self.itos) else UNK_TOKEN
            if token not in (EOS_TOKEN, UNK_TOKEN):
                out.append(token)
        return "".join(out)
