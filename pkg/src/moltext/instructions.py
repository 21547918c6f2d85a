"""Instruction examples: rendering, inversion, prompt, and file emission.

The two instruction templates and the evaluation prompt are frozen
byte-for-byte; everything downstream (training JSON, prompt lists)
derives from them. Emitted files are pure functions of their inputs and
seeds, so re-running a build reproduces identical bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .curation import MoleculeRecord
from .manifest import write_manifest
from .sampling import shuffled_prefix

__all__ = [
    "FORWARD_PREFIX",
    "REVERSE_PREFIX",
    "PROMPT_TEMPLATE",
    "InstructionExample",
    "format_example",
    "flip_example",
    "invert_cohort",
    "render_prompt",
    "emit_dataset",
    "read_dataset",
    "emit_prompt_list",
]

FORWARD_PREFIX = "Translate the following SMILES string into an IUPAC name: "
REVERSE_PREFIX = "Translate the following IUPAC name into a SMILES string: "

PROMPT_TEMPLATE = (
    "Below is an instruction that describes a task. "
    "Write a response that appropriately completes the request. "
    "### Instruction: {instruction} ### Response:"
)


@dataclass(slots=True, frozen=True)
class InstructionExample:
    instruction: str
    input: str
    output: str
    direction: str  # smiles_to_iupac | iupac_to_smiles

    def __post_init__(self) -> None:
        if not self.output:
            raise ValueError("instruction example needs a non-empty output")
        if not self.instruction.startswith((FORWARD_PREFIX, REVERSE_PREFIX)):
            raise ValueError("instruction does not start with a known template")


def format_example(record: MoleculeRecord, direction: str) -> InstructionExample:
    """Render one record in the requested direction.

    The template is an exact concatenation: prefix, one space after the
    colon (part of the prefix), then the source string; no trailing
    whitespace is added.
    """
    if direction == "smiles_to_iupac":
        return InstructionExample(
            instruction=FORWARD_PREFIX + record.smiles,
            input="",
            output=record.iupac,
            direction=direction,
        )
    if direction == "iupac_to_smiles":
        return InstructionExample(
            instruction=REVERSE_PREFIX + record.iupac,
            input="",
            output=record.smiles,
            direction=direction,
        )
    raise ValueError(f"unknown direction {direction!r}")


def flip_example(example: InstructionExample) -> InstructionExample:
    """Re-render an example in the opposite direction (an involution)."""
    if example.direction == "smiles_to_iupac":
        smiles = example.instruction[len(FORWARD_PREFIX):]
        record = MoleculeRecord(id=-1, smiles=smiles, iupac=example.output)
        return format_example(record, "iupac_to_smiles")
    iupac = example.instruction[len(REVERSE_PREFIX):]
    record = MoleculeRecord(id=-1, smiles=example.output, iupac=iupac)
    return format_example(record, "smiles_to_iupac")


def invert_cohort(
    examples: Sequence[InstructionExample], fraction: float, seed: int
) -> list[InstructionExample]:
    """Reverse the direction of exactly round(fraction * N) examples.

    Positions are drawn by seeded sampling without replacement; example
    order is preserved. The round is half-up over the fraction's decimal
    representation.
    """
    if not 0 <= fraction <= 1:
        raise ValueError(f"fraction must be in [0, 1], got {fraction}")
    n = len(examples)
    count = math.floor(Fraction(str(fraction)) * n + Fraction(1, 2))
    chosen = set(shuffled_prefix(n, count, seed))
    return [
        flip_example(ex) if i in chosen else ex for i, ex in enumerate(examples)
    ]


def render_prompt(instruction: str, output: str | None = None) -> str:
    """The evaluation prompt; with `output` present, the training form."""
    prompt = PROMPT_TEMPLATE.format(instruction=instruction)
    if output is not None:
        prompt += " " + output
    return prompt


def emit_dataset(
    examples: Iterable[InstructionExample],
    path,
    manifest_params: dict | None = None,
    manifest_inputs: dict | None = None,
) -> Path:
    """Write the instruction JSON file (and its manifest) for a trainer.

    The array holds objects with keys instruction/input/output in that
    order, UTF-8, two-space indentation, trailing newline.
    """
    payload = [
        {"instruction": ex.instruction, "input": ex.input, "output": ex.output}
        for ex in examples
    ]
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, ensure_ascii=False)
        fh.write("\n")
    write_manifest(
        path,
        command="emit_dataset",
        params=manifest_params or {},
        inputs=manifest_inputs or {},
    )
    return path


def read_dataset(path) -> list[InstructionExample]:
    """Load an emitted instruction JSON file back into examples."""
    with open(path, encoding="utf-8") as fh:
        payload = json.load(fh)
    out = []
    for row in payload:
        direction = (
            "smiles_to_iupac"
            if row["instruction"].startswith(FORWARD_PREFIX)
            else "iupac_to_smiles"
        )
        out.append(
            InstructionExample(
                instruction=row["instruction"],
                input=row["input"],
                output=row["output"],
                direction=direction,
            )
        )
    return out


def emit_prompt_list(examples: Iterable[InstructionExample], path) -> Path:
    """One rendered evaluation prompt per line, for the inference harness."""
    path = Path(path)
    with open(path, "w", encoding="utf-8") as fh:
        for ex in examples:
            fh.write(render_prompt(ex.instruction) + "\n")
    return path
