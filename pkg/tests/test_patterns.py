from itertools import product

import pytest

from moltext import molecule_from_smiles
from moltext.patterns import (
    PatternAtom,
    PatternBond,
    SubstructurePattern,
    forbidden_patterns,
    match_pattern,
)
from moltext.patterns import _atom_ok, _bond_ok

CAFFEINE = "CN1C=NC2=C1C(=O)N(C(=O)N2C)C"


def brute_force_match(graph, pattern) -> bool:
    """Exhaustive injective-mapping search (element-pruned enumeration)."""
    slots = []
    for want in pattern.atoms:
        slots.append(
            [i for i in range(len(graph.atoms)) if _atom_ok(graph, i, want)]
        )
    for assignment in product(*slots):
        if len(set(assignment)) != len(assignment):
            continue
        ok = True
        for bond in pattern.bonds:
            if not _bond_ok(graph, assignment[bond.i], assignment[bond.j], bond):
                ok = False
                break
        if ok:
            return True
    return False


@pytest.fixture(scope="module")
def patterns():
    return {p.name: p for p in forbidden_patterns()}


def test_twelve_patterns_shipped(patterns):
    assert len(patterns) == 12
    assert set(patterns) == {
        "nitro", "nitroso", "isonitrile", "isocyanide", "azide", "anhydride",
        "epoxide", "aziridine", "alkyl_halide", "acyl_halide",
        "sulfonyl_halide", "dicarbonyl_1_2",
    }


def test_pattern_size_and_connectivity_limits():
    with pytest.raises(ValueError):
        SubstructurePattern(
            name="too_big",
            atoms=[PatternAtom(elements=frozenset("C")) for _ in range(9)],
            bonds=[PatternBond(i, i + 1, "single") for i in range(8)],
        )
    with pytest.raises(ValueError):
        SubstructurePattern(
            name="disconnected",
            atoms=[PatternAtom(elements=frozenset("C")) for _ in range(2)],
            bonds=[],
        )


def test_epoxide_pattern_equals_molecule(patterns):
    assert match_pattern(molecule_from_smiles("C1CO1"), patterns["epoxide"])


def test_nitro_example(patterns):
    assert match_pattern(molecule_from_smiles("CC[N+](=O)[O-]"), patterns["nitro"])


def test_caffeine_matches_nothing(patterns):
    g = molecule_from_smiles(CAFFEINE)
    for name, pattern in patterns.items():
        assert not match_pattern(g, pattern), name


@pytest.mark.parametrize(
    "smiles,name,expected",
    [
        ("CCCl", "alkyl_halide", True),
        ("CCBr", "alkyl_halide", True),
        ("CCF", "alkyl_halide", False),
        ("c1ccccc1Cl", "alkyl_halide", False),
        ("C=CCl", "alkyl_halide", False),
        ("CC(=O)Cl", "acyl_halide", True),
        ("CC(=O)F", "acyl_halide", True),
        ("CC(=O)Cl", "alkyl_halide", False),
        ("CS(=O)(=O)Cl", "sulfonyl_halide", True),
        ("CS(=O)(=O)C", "sulfonyl_halide", False),
        ("CN=O", "nitroso", True),
        ("CC[N+](=O)[O-]", "nitroso", False),
        ("CCN=[N+]=[N-]", "azide", True),
        ("CC[N+]#[C-]", "isonitrile", True),
        ("CC[N+]#[C-]", "isocyanide", True),
        ("CC#N", "isonitrile", False),
        ("CC(=O)OC(=O)C", "anhydride", True),
        ("CC(=O)OC", "anhydride", False),
        ("C1CN1", "aziridine", True),
        ("C1CCN1", "aziridine", False),
        ("CC(=O)C(C)=O", "dicarbonyl_1_2", True),
        ("CC(=O)CC(C)=O", "dicarbonyl_1_2", False),
        ("O=C1C=CC=CC1=O", "dicarbonyl_1_2", True),
    ],
)
def test_pattern_cases(patterns, smiles, name, expected):
    assert match_pattern(molecule_from_smiles(smiles), patterns[name]) is expected


def test_matcher_equals_brute_force_on_small_molecules(patterns, fixture_graphs):
    checked = 0
    for row, g in fixture_graphs:
        if g.heavy_atom_count() > 12:
            continue
        checked += 1
        for name, pattern in patterns.items():
            assert match_pattern(g, pattern) == brute_force_match(g, pattern), (
                row["smiles"],
                name,
            )
    assert checked >= 20


def test_matcher_equals_brute_force_on_handpicked(patterns):
    probes = [
        "C1CO1", "CC1CO1", "C1CN1", "CC[N+](=O)[O-]", "CCN=[N+]=[N-]",
        "CC(=O)OC(=O)C", "CS(=O)(=O)Cl", "CC(=O)C(C)=O", "CC(=O)Cl",
        "CCCl", "CCBr", "CN=O", "CC[N+]#[C-]", "c1ccccc1", "C1CC1",
        "OCC(O)CO", "CC(C)(C)C", "O=C1C=CC=CC1=O",
    ]
    for smiles in probes:
        g = molecule_from_smiles(smiles)
        for name, pattern in patterns.items():
            assert match_pattern(g, pattern) == brute_force_match(g, pattern), (
                smiles,
                name,
            )
