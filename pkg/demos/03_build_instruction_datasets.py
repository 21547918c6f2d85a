"""Split a parent set, sample cohorts, render instructions, invert, emit.

Run from the repository root:

    python3 demos/03_build_instruction_datasets.py
"""

import json
import tempfile
from pathlib import Path

from moltext.curation import MoleculeRecord
from moltext.instructions import (
    emit_dataset,
    emit_prompt_list,
    format_example,
    invert_cohort,
    render_prompt,
)
from moltext.sampling import sample_cohort, split_parent

workdir = Path(tempfile.mkdtemp(prefix="moltext-demo-"))

# A toy parent set of (id, SMILES, name) records.
parent = [
    MoleculeRecord(i, f"C{'C' * (i % 11)}O", f"synthetic-alcohol-{i}")
    for i in range(1, 501)
]

finetune_pool, test_pool = split_parent(parent, ratio=0.8, seed=42)
print(f"parent {len(parent)} -> fine-tune {len(finetune_pool)} + test {len(test_pool)}")
assert {r.id for r in finetune_pool}.isdisjoint({r.id for r in test_pool})

cohort = sample_cohort(finetune_pool, n=10, seed=42)
examples = [format_example(rec, "smiles_to_iupac") for rec in cohort]
print("\nfirst instruction:")
print(f"  {examples[0].instruction}")
print(f"  -> {examples[0].output}")

# Nested-prefix property: the 5-cohort is a prefix of the 10-cohort.
smaller = sample_cohort(finetune_pool, n=5, seed=42)
assert cohort[:5] == smaller

# Invert a quarter of the directions, order preserved.
mixed = invert_cohort(examples, fraction=0.25, seed=7)
flipped = sum(ex.direction == "iupac_to_smiles" for ex in mixed)
print(f"\ninverted {flipped} of {len(mixed)} examples")

dataset = workdir / "train.json"
emit_dataset(mixed, dataset, manifest_params={"cohort_seed": 42, "inversion_fraction": 0.25})
emit_prompt_list(mixed, workdir / "prompts.txt")
print(f"\nwrote {dataset} ({len(json.loads(dataset.read_text()))} rows) and prompts.txt")
print("\nevaluation prompt for the first example:")
print(f"  {render_prompt(mixed[0].instruction)}")
