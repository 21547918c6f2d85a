"""Curate a small synthetic dump end to end: join, dedup, filter, stats.

Run from the repository root:

    python3 demos/02_curate_pipeline.py
"""

import tempfile
from pathlib import Path

from moltext.curation import curate_files
from moltext.filters import a2_default_config

workdir = Path(tempfile.mkdtemp(prefix="moltext-demo-"))

# Two PubChem-style dumps: id<TAB>smiles and id<TAB>iupac name.
smiles_rows = [
    (1, "CN1C=NC2=C1C(=O)N(C(=O)N2C)C"),      # fails nRot/HBD
    (2, "NCC(O)CC1CCN(CC1)CC(O)CN"),           # clean passer
    (3, "NCC(O)CC1CCN(CC1)CC(O)CN"),           # duplicate SMILES of 2
    (4, "CC(=O)O.[Na]"),                       # salt
    (5, "CC[N+](=O)[O-]"),                     # nitro group
    (6, "C1CC"),                               # parse error: unclosed ring
    (7, "NCCC1CCC(CC1)C(O)C(O)CO"),            # clean passer
]
iupac_rows = [
    (1, "1,3,7-trimethylpurine-2,6-dione"),
    (2, "piperidine diol diamine"),
    (3, "another name"),
    (4, "sodium acetate"),
    (5, "nitroethane"),
    (6, "junk"),
    (7, "cyclohexyl triol amine"),
]
smiles_file = workdir / "smiles.tsv"
iupac_file = workdir / "iupac.tsv"
smiles_file.write_text("".join(f"{i}\t{s}\n" for i, s in smiles_rows))
iupac_file.write_text("".join(f"{i}\t{n}\n" for i, n in iupac_rows))

parent = workdir / "parent.tsv"
stats = curate_files(
    smiles_file, iupac_file, a2_default_config(),
    parent, stats_path=workdir / "stats.txt",
)

print(f"joined {stats.rows_joined} rows, retained {stats.retained}")
print(f"drops: dup_smiles={stats.dropped_duplicate_smiles} "
      f"parse={stats.dropped_parse_error} filtered={stats.dropped_filtered}")
print(f"per-criterion counts: {stats.dropped_per_filter}")
print(f"conservation identity holds: {stats.conservation_holds()}")
print("\nretained parent dataset:")
print(parent.read_text())
print(f"artifacts in {workdir} (parent.tsv + stats.txt + manifest)")
