"""Build the frozen descriptor fixture from a molecule list.

Prefers the installed RDKit toolkit as the oracle (--oracle rdkit); when
it is unavailable the bundled independent reference implementation
(refchem.py) computes the values instead. The fixture records which
oracle produced it.
"""

from __future__ import annotations

import argparse

COLUMNS = [
    "id", "smiles", "mw", "fsp3", "n_rings", "n_aromatic_rings",
    "n_phenyl_rings", "n_rotatable", "hbd", "net_charge", "tpsa", "clogp",
    "element_violation", "multi_fragment", "has_isotope",
]


def describe_rdkit(smiles: str) -> dict:
    from rdkit import Chem
    from rdkit.Chem import Crippen, Descriptors, Lipinski, rdMolDescriptors

    mol = Chem.MolFromSmiles(smiles)
    if mol is None:
        raise ValueError(f"rdkit refused {smiles!r}")
    phenyl = Chem.MolFromSmarts("c1ccccc1")
    n_phenyl = sum(
        1
        for ring in mol.GetRingInfo().AtomRings()
        if len(ring) == 6
        and all(mol.GetAtomWithIdx(i).GetIsAromatic() for i in ring)
        and all(mol.GetAtomWithIdx(i).GetSymbol() == "C" for i in ring)
    )
    del phenyl
    return {
        "mw": Descriptors.MolWt(mol),
        "fsp3": rdMolDescriptors.CalcFractionCSP3(mol),
        "n_rings": rdMolDescriptors.CalcNumRings(mol),
        "n_aromatic_rings": rdMolDescriptors.CalcNumAromaticRings(mol),
        "n_phenyl_rings": n_phenyl,
        "n_rotatable": Lipinski.NumRotatableBonds(mol),
        "hbd": sum(
            a.GetTotalNumHs()
            for a in mol.GetAtoms()
            if a.GetSymbol() in ("N", "O")
        ),
        "net_charge": Chem.GetFormalCharge(mol),
        "tpsa": Descriptors.TPSA(mol),
        "clogp": Crippen.MolLogP(mol),
        "element_violation": int(
            any(
                a.GetSymbol() not in ("H", "C", "N", "O", "S", "F", "Cl", "Br")
                for a in mol.GetAtoms()
            )
        ),
        "multi_fragment": int(len(Chem.GetMolFrags(mol)) > 1),
        "has_isotope": int(any(a.GetIsotope() for a in mol.GetAtoms())),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--molecules", required=True, help="id<TAB>smiles input")
    ap.add_argument("--out", required=True)
    ap.add_argument("--oracle", choices=["auto", "rdkit", "reference"], default="auto")
    args = ap.parse_args()

    oracle = args.oracle
    if oracle == "auto":
        try:
            import rdkit  # noqa: F401

            oracle = "rdkit"
        except ImportError:
            oracle = "reference"
    if oracle == "rdkit":
        describe = describe_rdkit
    else:
        import refchem

        describe = refchem.describe

    rows = []
    with open(args.molecules, encoding="utf-8") as fh:
        for line in fh:
            rid, smiles = line.rstrip("\n").split("\t")
            values = describe(smiles)
            rows.append((rid, smiles, values))

    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(f"# descriptor fixture, oracle={oracle}\n")
        fh.write("\t".join(COLUMNS) + "\n")
        for rid, smiles, values in rows:
            cells = [rid, smiles]
            for col in COLUMNS[2:]:
                value = values[col]
                if col == "fsp3":
                    # Rational when the oracle gives one; float otherwise.
                    cells.append(f"{value:.9f}" if isinstance(value, float) else str(value))
                elif isinstance(value, float):
                    cells.append(f"{value:.6f}")
                else:
                    cells.append(str(value))
            fh.write("\t".join(cells) + "\n")
    print(f"wrote {len(rows)} rows with oracle={oracle} to {args.out}")


if __name__ == "__main__":
    main()
