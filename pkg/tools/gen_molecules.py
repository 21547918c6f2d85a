"""Seeded generator of valid, drug-like SMILES for test fixtures.

Molecules are assembled from scaffolds with substitution slots plus a
hand-written set of real structures (validated at build time with the
reference parser). Ring-closure digits inside fragments are renumbered
per insertion so nesting can never collide. The output distribution
deliberately spans both sides of every filter criterion.
"""

from __future__ import annotations

import argparse
import random
import re

import refchem

# Real structures, Kekule-form like the source dumps. The first thirteen
# are the scoring-table molecules; the rest are common small drugs.
REAL_MOLECULES = [
    "CCNCC1=CN(N=C1C(F)(F)F)C(C)C",
    "CCC(CCCSC1=C(C=CC(=C1)F)F)(C#N)NCC",
    "CN1CCOC(C1)CN2CCOC(C2)CN",
    "CCC1=C(N(C(=O)CS1)C(C)C(=O)O)C2=CC=C(C=C2)C",
    "CC1C(N(CCC1=O)CCC2=CC=CC3=C2N=CC=C3)C",
    "CC1=C(OC(=N1)C)CC(=O)NCCC2=CC=C(C=C2)Cl",
    "CC1CCCN(C1)C(=O)NC2CCN(CC2)CC3=CC=C(C=C3)Cl",
    "C1CN(CCC1C2=CSC=C2)S(=O)(=O)C3=CC=CC(=C3)C(F)(F)F",
    "COC1=CC=CC(=C1)[C@@H](C2CCN(CC2)CC3=CC=CC=C3)O",
    "CCCOC1=CC=CC(=C1)C(CCO)C(CC)N",
    "CC1=CN=C(S1)CNS(=O)(=O)C2CCNCC2",
    "C1CN(CCC1O)CCC2CNC2",
    "CN1C=NC2=C1C(=O)N(C(=O)N2C)C",
    "CC(=O)OC1=CC=CC=C1C(=O)O",
    "CC(=O)NC1=CC=C(C=C1)O",
    "CC(C)CC1=CC=C(C=C1)C(C)C(=O)O",
    "CN1CCC[C@H]1C1=CC=CN=C1",
    "NC1=CC=C(C=C1)S(=O)(=O)N",
    "CCN(CC)CCNC(=O)C1=CC=C(N)C=C1",
    "OC(=O)C1=CC=CC=C1O",
    "CC(N)CC1=CC=CC=C1",
    "NC(=O)C1=CC=CC=N1",
    "OCC1=CC=C(O)C=C1",
    "CC1=CC(=O)NC(=S)N1",
    "OC1CCCCC1N2CCCCC2",
    "COC1=CC2=C(C=C1)N=C(S2)NC(=O)C",
    "CSCCC(N)C(=O)O",
    "NCCCCC(N)C(=O)O",
    "OC(=O)CC(O)(CC(=O)O)C(=O)O",
    "CC(=O)NCCC1=CNC2=C1C=C(OC)C=C2",
]

# Scaffolds with {} substitution slots; digits 1-2 reserved for scaffolds.
SCAFFOLDS = [
    "C1CCN({})CC1",
    "C1CN(CCN1{})C",
    "C1=CC=C({})C=C1",
    "C1=CC=C(C=C1{})F",
    "C1=CC2=C(C=C1)N=C({})S2",
    "C1=CC=C2NC({})=CC2=C1",
    "C1CCC({})CC1",
    "C1CC1{}",
    "O1CCN({})CC1",
    "C1=NC=CC({})=C1",
    "S1C=CC({})=C1",
    "O1C=CC({})=C1",
    "C1=CC=C2C(=C1)C=CC({})=C2",
    "C1CNC({})C1",
    "{}",
]

# Substituent fragments; digits 8-9 only (renumbered on insertion).
FRAGMENTS = [
    "C", "CC", "CCC", "CCCC", "CC(C)C", "C(C)(C)C",
    "CO", "CCO", "CCCO", "OC", "OCC", "N", "NC", "NCC", "N(C)C",
    "CN", "CCN", "C(=O)O", "CC(=O)O", "C(=O)N", "C(=O)NC", "CC(=O)NC",
    "NC(=O)C", "NC(=O)CC", "OC(=O)C", "C(=O)OC", "S(=O)(=O)N", "S(=O)(=O)C",
    "NS(=O)(=O)C", "SC", "CSC", "F", "C(F)(F)F", "CC(F)(F)F",
    "C8=CC=CC=C8", "CC8=CC=CC=C8", "OC8=CC=CC=C8", "C8=CC=C(O)C=C8",
    "C8=CC=C(F)C=C8", "C8=CC=C(OC)C=C8", "C8=CC=NC=C8", "C8=CC=CS8",
    "C8CCNC8", "C8CCNCC8", "N8CCOCC8", "C8CCCCC8", "CC8CCCCN8C",
    "C#N", "CC#N", "C=C", "CC=C", "C(C)O", "C(N)C", "CC(C)N", "C(C)C(=O)O",
]

# Rare decorations steering records toward specific filter outcomes.
SPECIALS = [
    "CC(=O)O.CC(=O)O",                    # multi-fragment
    "CC(=O)O.[Na]",                       # salt with metal
    "[13CH3]C1=CC=CC=C1",                 # isotope label
    "CC[N+](=O)[O-]",                     # nitro
    "CCN=[N+]=[N-]",                      # azide
    "CC[N+]#[C-]",                        # isonitrile
    "CC(=O)OC(=O)C",                      # anhydride
    "CCC8CO8",                            # epoxide (digit renumbered)
    "CCC8CN8",                            # aziridine
    "CCCl",                               # alkyl halide
    "CC(=O)Cl",                           # acyl halide
    "CS(=O)(=O)Cl",                       # sulfonyl halide
    "CC(=O)C(=O)C",                       # 1,2-dicarbonyl
    "CC[Si](C)(C)C",                      # element violation
    "CC(=O)[O-].C[N+](C)(C)C",            # charged salt pair
    "C[N+](C)(C)CCO",                     # net positive charge
    "CC(N)=O",                            # tiny, fails MW
]

_DIGIT = re.compile(r"%\d\d|\d")


def _renumber(fragment: str, counter: list[int]) -> str:
    """Give every ring digit in the fragment a fresh global number."""
    mapping: dict[str, str] = {}

    def sub(match: re.Match) -> str:
        token = match.group(0)
        if token not in mapping:
            counter[0] += 1
            n = counter[0]
            mapping[token] = str(n) if n < 10 else f"%{n:02d}"
        return mapping[token]

    return _DIGIT.sub(sub, fragment)


def build_molecule(rng: random.Random) -> str:
    roll = rng.random()
    if roll < 0.05:
        return rng.choice(SPECIALS)
    if roll < 0.17:
        return rng.choice(REAL_MOLECULES)
    counter = [2]  # digits 1-2 live in scaffolds
    scaffold = rng.choice(SCAFFOLDS)
    n_slots = scaffold.count("{}")
    pieces = []
    for _ in range(n_slots):
        fragment = rng.choice(FRAGMENTS)
        # Occasionally nest one more level for bulkier side chains.
        if rng.random() < 0.35 and "{}" not in fragment:
            tail = rng.choice(FRAGMENTS)
            if not tail.startswith(("F", "C#", "C=")) and "(" not in tail[:2]:
                fragment = f"{fragment}({_renumber(tail, counter)})" if fragment[-1].isalpha() else fragment
        pieces.append(_renumber(fragment, counter))
    return scaffold.format(*pieces)


def generate(n: int, seed: int) -> list[str]:
    rng = random.Random(seed)
    seen: set[str] = set()
    out: list[str] = []
    for smiles in REAL_MOLECULES:
        refchem.parse(smiles)
        seen.add(smiles)
        out.append(smiles)
    guard = 0
    while len(out) < n:
        guard += 1
        if guard > 50 * n:
            raise RuntimeError("generator stalled")
        smiles = build_molecule(rng)
        if smiles in seen:
            continue
        try:
            refchem.parse(smiles)
        except refchem.RefParseError:
            continue
        seen.add(smiles)
        out.append(smiles)
    return out[:n]


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=20240131)
    ap.add_argument("--out", required=True)
    args = ap.parse_args()
    molecules = generate(args.n, args.seed)
    with open(args.out, "w", encoding="utf-8") as fh:
        for i, smiles in enumerate(molecules, 1):
            fh.write(f"{i}\t{smiles}\n")
    print(f"wrote {len(molecules)} molecules to {args.out}")


if __name__ == "__main__":
    main()
