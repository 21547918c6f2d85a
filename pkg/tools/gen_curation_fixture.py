"""Build the 100-row curation golden fixture.

Inputs deliberately exercise every pipeline path: malformed lines,
join drops, both duplicate kinds (including the chained case), parse
failures, and at least one violation of every filter criterion, plus a
block of clean passers. Expected outputs are computed here with the
independent reference chemistry and a local reimplementation of the
threshold logic, then frozen for the test suite to compare against.
"""

from __future__ import annotations

import argparse
from fractions import Fraction
from pathlib import Path

import refchem

# (id, smiles, iupac) rows; names are opaque labels, unique unless the
# row is meant to collide.
HAND_ROWS = [
    (1, "CN1C=NC2=C1C(=O)N(C(=O)N2C)C", "1,3,7-trimethylpurine-2,6-dione"),
    (2, "CC(=O)OC1=CC=CC=C1C(=O)O", "2-acetyloxybenzoic acid"),
    (3, "C", "methane"),
    (4, "[CH4]", "methane"),            # iupac collision with 3
    (5, "CCO", "ethanol"),
    (6, "CCO", "ethanol variant"),      # smiles collision with 5
    (7, "CC[Si](C)(C)C", "silicon thing"),
    (8, "[13CH3]C1=CC=CC=C1", "labeled toluene"),
    (9, "CC(=O)O.[Na]", "sodium acetate"),
    (10, "CC[N+](=O)[O-]", "nitroethane"),
    (11, "CCN=[N+]=[N-]", "azidoethane"),
    (12, "CCCl", "chloroethane"),
    (13, "CC(=O)Cl", "acetyl chloride"),
    (14, "CS(=O)(=O)Cl", "methanesulfonyl chloride"),
    (15, "CC(=O)C(=O)C", "butane-2,3-dione"),
    (16, "CC(=O)OC(=O)C", "acetic anhydride"),
    (17, "CCC1CO1", "2-ethyloxirane"),
    (18, "C1CN1CC", "1-ethylaziridine"),
    (19, "not_a_smiles", "unparseable row"),
    (20, "C1CC", "dangling ring row"),
    (21, "C[N+](C)(C)CCO", "choline cation"),
    (22, "OC(=O)C1=CC=CC=C1O", "2-hydroxybenzoic acid"),
    (23, "NCC(O)C(O)C(O)C(O)CO", "aminopentitol chain"),   # no ring
    (24, "NC1CCC(CC1)C(O)C(O)CO", "aminotriol ring"),
    # Clean passers under the printed criteria (HBD >= 4, nRot >= 3, ...).
    (25, "NCC(O)CC1CCN(CC1)CC(O)CN", "piperidine diol diamine"),
    (26, "NCC(O)C1CCC(CC1)NC(=O)C(O)CN", "cyclohexyl amide diol"),
    (27, "NC(=O)C1CCN(CC1)CCC(O)CO", "piperidine carboxamide diol"),
    (28, "NCCC1CCC(CC1)C(O)C(O)CO", "cyclohexyl triol amine"),
    (29, "OC(CO)C1CCN(CC1)CCNC(=O)CO", "glycolamide piperidine"),
    (30, "NC(=O)CC1CCC(CC1)NCC(O)CO", "acetamide amino diol"),
    (31, "NCC(O)CC1CCC(CC1)CC(O)CN", "cyclohexane diol diamine"),
    (32, "OC1CCC(CC1)NC(=O)C(N)CCO", "hydroxycyclohexyl amide"),
    # Near misses: one partition-range fail, one rotatable-count fail.
    (33, "OCC(O)CN1CCC(CC1)NC(=O)CN", "glycinamide triol"),
    (34, "OCC(N)C1CCC(O)C(O)C1", "aminodiol ring"),
]

# ids present in only one input file (join must drop them); chosen above
# every golden id so the inputs stay ascending.
SMILES_ONLY = [(9990, "CCCCCCCC", "unused")]
IUPAC_ONLY = [(9991, None, "orphan name")]


def _passes(desc: dict) -> tuple[bool, list[str]]:
    reasons = []
    if desc["element_violation"]:
        reasons.append("elements")
    if desc["has_isotope"] or desc["multi_fragment"]:
        reasons.append("no_isotopes_adducts_salts")
    if desc["forbidden"]:
        reasons.append("forbidden_groups")
    if not 150 < desc["mw"] < 550:
        reasons.append("mw")
    if not desc["fsp3"] >= Fraction(3, 10):
        reasons.append("fsp3")
    if not desc["n_phenyl_rings"] <= 2:
        reasons.append("n_phenyl")
    if not desc["n_aromatic_rings"] <= 4:
        reasons.append("n_aromatic")
    if not desc["n_rings"] >= 1:
        reasons.append("n_rings")
    if not desc["net_charge"] == 0:
        reasons.append("formal_charge")
    if not desc["n_rotatable"] >= 3:
        reasons.append("n_rotatable")
    if not 25 < desc["tpsa"] < 150:
        reasons.append("tpsa")
    if not -2 < desc["clogp"] < 4.5:
        reasons.append("clogp")
    if not desc["hbd"] >= 4:
        reasons.append("hbd")
    return not reasons, reasons


_FORBIDDEN_PROBES = {
    "nitro": "[N+](=O)[O-]",
    "azide": "N=[N+]=[N-]",
}


def _describe(smiles: str) -> dict | None:
    try:
        mol = refchem.parse(smiles)
    except refchem.RefParseError:
        return None
    values = refchem.describe(smiles)
    values["fsp3"] = refchem.fsp3(mol)
    values["forbidden"] = _has_forbidden(mol)
    return values


def _has_forbidden(mol: refchem.RMol) -> bool:
    """Direct checks for the twelve unwanted groups, written from scratch."""
    g = mol.graph
    atoms = mol.atoms

    def order(a, b):
        return g.edges[a, b]["order"]

    for idx, atom in enumerate(atoms):
        nbrs = list(g[idx])
        if atom.element == "N":
            doubles = [n for n in nbrs if order(idx, n) == 2]
            singles = [n for n in nbrs if order(idx, n) == 1]
            triples = [n for n in nbrs if order(idx, n) == 3]
            if atom.charge == 1:
                if any(atoms[n].element == "O" for n in doubles) and any(
                    atoms[n].element == "O" and atoms[n].charge == -1 for n in singles
                ):
                    return True  # nitro
                if any(atoms[n].element == "N" and atoms[n].charge == -1 for n in doubles) and (
                    sum(1 for n in doubles if atoms[n].element == "N") == 2
                ):
                    return True  # azide (middle atom view)
                if any(atoms[n].element == "C" and atoms[n].charge == -1 for n in triples):
                    return True  # isonitrile / isocyanide
            if atom.charge == 0 and not atom.aromatic:
                if any(atoms[n].element == "O" and order(idx, n) == 2 for n in nbrs):
                    return True  # nitroso (covers N=O with anything else attached)
        if atom.element == "C" and not atom.aromatic:
            doubles_o = [n for n in nbrs if order(idx, n) == 2 and atoms[n].element == "O"]
            if doubles_o:
                for n in nbrs:
                    if atoms[n].element in ("F", "Cl", "Br") and order(idx, n) == 1:
                        return True  # acyl halide
                    if atoms[n].element == "O" and order(idx, n) == 1:
                        # anhydride: bridge O to another carbonyl C
                        for m in g[n]:
                            if m != idx and atoms[m].element == "C" and any(
                                order(m, x) == 2 and atoms[x].element == "O" for x in g[m]
                            ):
                                return True
                    if atoms[n].element == "C" and order(idx, n) == 1 and any(
                        order(n, x) == 2 and atoms[x].element == "O" for x in g[n]
                    ):
                        return True  # 1,2-dicarbonyl
            else:
                sp3 = all(order(idx, n) == 1 for n in nbrs) and not atom.aromatic
                if sp3 and any(
                    atoms[n].element in ("Cl", "Br") for n in nbrs
                ):
                    return True  # alkyl halide
        if atom.element == "S":
            doubles_o = [n for n in nbrs if order(idx, n) == 2 and atoms[n].element == "O"]
            if len(doubles_o) >= 2 and any(
                atoms[n].element in ("F", "Cl", "Br") and order(idx, n) == 1 for n in nbrs
            ):
                return True  # sulfonyl halide
    # epoxide / aziridine: any 3-ring containing O or N.
    for ring in mol.rings:
        if len(ring) == 3 and any(atoms[i].element in ("O", "N") for i in ring):
            if sum(1 for i in ring if atoms[i].element == "C") == 2:
                return True
    return False


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", required=True)
    ap.add_argument("--seed", type=int, default=777)
    args = ap.parse_args()
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)

    import gen_molecules

    pool = gen_molecules.generate(300, args.seed)
    rows = list(HAND_ROWS)
    used = {r[1] for r in rows}
    names_used = {r[2] for r in rows}
    next_id = len(rows) + 1
    for smiles in pool:
        if len(rows) >= 100:
            break
        if smiles in used:
            continue
        name = f"compound-{next_id:03d}"
        rows.append((next_id, smiles, name))
        used.add(smiles)
        names_used.add(name)
        next_id += 1
    assert len(rows) == 100, len(rows)

    # Input files: ascending ids, one malformed line in each, plus
    # one-sided rows the join must drop.
    smiles_lines = [f"{rid}\t{smi}" for rid, smi, _ in rows]
    smiles_lines.append(f"{SMILES_ONLY[0][0]}\t{SMILES_ONLY[0][1]}")
    smiles_lines.append("9992\t")  # malformed: empty value
    iupac_lines = [f"{rid}\t{name}" for rid, _, name in rows]
    iupac_lines.append(f"{IUPAC_ONLY[0][0]}\t{IUPAC_ONLY[0][2]}")
    iupac_lines.append("bad-id\tname")  # malformed: non-integer id
    (out / "golden_smiles.tsv").write_text("\n".join(smiles_lines) + "\n")
    (out / "golden_iupac.tsv").write_text("\n".join(iupac_lines) + "\n")

    # Expected pipeline result.
    joined = rows  # every golden row appears in both files
    stats = {
        "rows_read": len(smiles_lines) + len(iupac_lines),
        "rows_joined": len(joined),
        "malformed_lines": 2,
        "dropped_duplicate_smiles": 0,
        "dropped_duplicate_iupac": 0,
        "dropped_parse_error": 0,
        "dropped_filtered": 0,
        "retained": 0,
    }
    per_filter: dict[str, int] = {}

    seen_smiles: dict[str, int] = {}
    survivors = []
    for rid, smi, name in joined:
        if smi in seen_smiles:
            stats["dropped_duplicate_smiles"] += 1
            continue
        seen_smiles[smi] = rid
        survivors.append((rid, smi, name))
    seen_names: dict[str, int] = {}
    survivors2 = []
    for rid, smi, name in survivors:
        if name in seen_names:
            stats["dropped_duplicate_iupac"] += 1
            continue
        seen_names[name] = rid
        survivors2.append((rid, smi, name))

    retained_lines = []
    for rid, smi, name in survivors2:
        desc = _describe(smi)
        if desc is None:
            stats["dropped_parse_error"] += 1
            continue
        ok, reasons = _passes(desc)
        if ok:
            retained_lines.append(f"{rid}\t{smi}\t{name}")
            stats["retained"] += 1
        else:
            stats["dropped_filtered"] += 1
            for reason in reasons:
                per_filter[reason] = per_filter.get(reason, 0) + 1

    (out / "golden_expected_parent.tsv").write_text(
        "\n".join(retained_lines) + ("\n" if retained_lines else "")
    )
    order = [
        "elements", "no_isotopes_adducts_salts", "forbidden_groups", "mw",
        "fsp3", "n_phenyl", "n_aromatic", "n_rings", "formal_charge",
        "n_rotatable", "tpsa", "clogp", "hbd",
    ]
    with open(out / "golden_expected_stats.txt", "w") as fh:
        for key in (
            "rows_read", "rows_joined", "malformed_lines",
            "dropped_duplicate_smiles", "dropped_duplicate_iupac",
            "dropped_parse_error", "dropped_filtered",
        ):
            fh.write(f"{key}\t{stats[key]}\n")
        for criterion in order:
            fh.write(f"dropped_filter.{criterion}\t{per_filter.get(criterion, 0)}\n")
        fh.write(f"retained\t{stats['retained']}\n")
    print(
        f"golden fixture: {stats['retained']} retained, "
        f"{stats['dropped_filtered']} filtered, "
        f"{stats['dropped_parse_error']} parse errors, per-filter {per_filter}"
    )


if __name__ == "__main__":
    main()
