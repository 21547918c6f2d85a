"""Walk through SMILES parsing, perception, and the property vector.

Run from the repository root:

    python3 demos/01_parse_and_descriptors.py
"""

from moltext import molecule_from_smiles
from moltext.descriptors import compute_descriptors
from moltext.filters import a2_default_config, passes_filters

# Caffeine, written the way the source dumps write it (Kekule form).
CAFFEINE = "CN1C=NC2=C1C(=O)N(C(=O)N2C)C"

graph = molecule_from_smiles(CAFFEINE)
print(f"parsed {CAFFEINE}")
print(f"  heavy atoms : {graph.heavy_atom_count()}")
print(f"  rings       : {[len(r) for r in graph.rings]} (aromatic: {sum(graph.ring_aromatic)})")
print(f"  hydrogens   : {sum(a.total_h for a in graph.atoms)} implicit+explicit")

ds = compute_descriptors(graph)
print("\ndescriptor vector")
print(f"  MW    {ds.mw:8.2f}   fsp3 {ds.fsp3:5.3f}   rings {ds.n_rings} "
      f"(aromatic {ds.n_aromatic_rings}, phenyl {ds.n_phenyl_rings})")
print(f"  nRot  {ds.n_rotatable:3d}        HBD  {ds.hbd}       charge {ds.net_formal_charge}")
print(f"  TPSA  {ds.tpsa:8.2f}   cLogP {ds.clogp:6.3f}")
print(f"  forbidden groups: {sorted(ds.forbidden_groups) or 'none'}")

verdict = passes_filters(ds, a2_default_config())
print(f"\nfilter verdict: {'pass' if verdict.passed else 'fail'}")
if not verdict.passed:
    print(f"  violated criteria (in order): {verdict.reasons}")

# Both encodings of benzene perceive identically.
lower = molecule_from_smiles("c1ccccc1")
kekule = molecule_from_smiles("C1=CC=CC=C1")
print("\nbenzene, lowercase vs Kekule input:")
print(f"  aromatic rings: {sum(lower.ring_aromatic)} vs {sum(kekule.ring_aromatic)}")
