from moltext import molecule_from_smiles

CAFFEINE = "CN1C=NC2=C1C(=O)N(C(=O)N2C)C"


def aromatic_ring_count(graph):
    return sum(graph.ring_aromatic)


def test_benzene_both_encodings():
    lower = molecule_from_smiles("c1ccccc1")
    kekule = molecule_from_smiles("C1=CC=CC=C1")
    assert aromatic_ring_count(lower) == 1
    assert aromatic_ring_count(kekule) == 1
    assert [a.aromatic for a in lower.atoms] == [a.aromatic for a in kekule.atoms]
    assert sum(a.implicit_h for a in lower.atoms) == 6


def test_caffeine_two_aromatic_rings():
    g = molecule_from_smiles(CAFFEINE)
    assert aromatic_ring_count(g) == 2
    # Only the five-membered ring is classically aromatic.
    assert sum(g.ring_classic) == 1
    classic = [len(g.rings[i]) for i, flag in enumerate(g.ring_classic) if flag]
    assert classic == [5]


def test_cyclohexane_not_aromatic():
    assert aromatic_ring_count(molecule_from_smiles("C1CCCCC1")) == 0


def test_heteroaromatics():
    for smiles, n in [
        ("c1cc[nH]c1", 1),
        ("c1ccncc1", 1),
        ("c1ccoc1", 1),
        ("c1ccsc1", 1),
        ("c1ccc2[nH]ccc2c1", 2),
        ("c1ccc2ccccc2c1", 2),
    ]:
        assert aromatic_ring_count(molecule_from_smiles(smiles)) == n, smiles


def test_pyridone_aromatic_but_not_classic():
    for smiles in ("O=c1cccc[nH]1", "O=C1C=CC=CN1"):
        g = molecule_from_smiles(smiles)
        assert aromatic_ring_count(g) == 1, smiles
        assert sum(g.ring_classic) == 0, smiles


def test_fulvene_not_aromatic():
    g = molecule_from_smiles("C=C1C=CC=C1")
    assert aromatic_ring_count(g) == 0


def test_atom_flag_implies_aromatic_ring(fixture_graphs):
    for row, g in fixture_graphs:
        aromatic_ring_atoms = set()
        for rid, ring in enumerate(g.rings):
            if g.ring_aromatic[rid]:
                aromatic_ring_atoms.update(ring)
        flagged = {i for i, a in enumerate(g.atoms) if a.aromatic}
        assert flagged == aromatic_ring_atoms, row["smiles"]


def test_fixture_agreement(descriptor_rows, fixture_graphs):
    disagreements = []
    for row, g in fixture_graphs:
        if aromatic_ring_count(g) != int(row["n_aromatic_rings"]):
            disagreements.append(row["smiles"])
    rate = 1 - len(disagreements) / len(fixture_graphs)
    assert rate >= 0.99, disagreements[:10]
