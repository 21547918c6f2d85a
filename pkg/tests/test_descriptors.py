from fractions import Fraction

import pytest

from moltext import molecule_from_smiles
from moltext.descriptors import (
    clogp,
    compute_descriptors,
    fraction_sp3,
    hydrogen_bond_donors,
    molecular_weight,
    ring_counts,
    rotatable_bonds,
    tpsa,
)
from tests.conftest import fixture_fsp3

CAFFEINE = "CN1C=NC2=C1C(=O)N(C(=O)N2C)C"


def mol(smiles):
    return molecule_from_smiles(smiles)


class TestMolecularWeight:
    def test_methane(self):
        assert molecular_weight(mol("C")) == pytest.approx(16.04, abs=0.01)

    def test_water(self):
        assert molecular_weight(mol("O")) == pytest.approx(18.02, abs=0.01)

    def test_caffeine(self):
        assert molecular_weight(mol(CAFFEINE)) == pytest.approx(194.19, abs=0.01)


class TestFractionSp3:
    def test_ethane(self):
        assert fraction_sp3(mol("CC")) == 1.0

    def test_benzene(self):
        assert fraction_sp3(mol("c1ccccc1")) == 0.0

    def test_caffeine(self):
        assert fraction_sp3(mol(CAFFEINE)) == 0.375

    def test_no_carbon(self):
        assert fraction_sp3(mol("O")) == 0.0


class TestRingCounts:
    def test_benzene(self):
        assert ring_counts(mol("c1ccccc1")) == (1, 1, 1)

    def test_caffeine(self):
        assert ring_counts(mol(CAFFEINE)) == (2, 2, 0)

    def test_ethanol(self):
        assert ring_counts(mol("CCO")) == (0, 0, 0)

    def test_pyridine_not_phenyl(self):
        assert ring_counts(mol("c1ccncc1")) == (1, 1, 0)


class TestRotatableBonds:
    def test_ethane(self):
        assert rotatable_bonds(mol("CC")) == 0

    def test_butane(self):
        assert rotatable_bonds(mol("CCCC")) == 1

    def test_caffeine(self):
        assert rotatable_bonds(mol(CAFFEINE)) == 0

    def test_amide_excluded(self):
        # N-methylacetamide: only the C-N amide bond is a candidate.
        assert rotatable_bonds(mol("CC(=O)NC")) == 0

    def test_ring_bonds_excluded(self):
        assert rotatable_bonds(mol("C1CCCCC1C1CCCCC1")) == 1


class TestHydrogenBondDonors:
    def test_water(self):
        assert hydrogen_bond_donors(mol("O")) == 2

    def test_ethanol(self):
        assert hydrogen_bond_donors(mol("CCO")) == 1

    def test_caffeine(self):
        assert hydrogen_bond_donors(mol(CAFFEINE)) == 0


class TestTpsa:
    def test_benzene(self):
        assert tpsa(mol("c1ccccc1")) == 0.0

    def test_ethanol(self):
        assert tpsa(mol("CCO")) == pytest.approx(20.23, abs=0.01)

    def test_caffeine(self):
        assert tpsa(mol(CAFFEINE)) == pytest.approx(58.44, abs=0.5)

    def test_sulfur_off_by_default(self):
        bare = tpsa(mol("CSC"))
        with_s = tpsa(mol("CSC"), include_s_and_p=True)
        assert bare == 0.0
        assert with_s == pytest.approx(25.30, abs=0.01)


class TestClogp:
    def test_methane(self):
        assert clogp(mol("C")) == pytest.approx(0.6361, abs=0.01)

    def test_benzene(self):
        assert clogp(mol("c1ccccc1")) == pytest.approx(1.6866, abs=0.01)

    def test_caffeine(self):
        assert clogp(mol(CAFFEINE)) == pytest.approx(-1.03, abs=0.05)


class TestComputeDescriptors:
    def test_caffeine_aggregate(self):
        ds = compute_descriptors(mol(CAFFEINE))
        assert ds.mw == pytest.approx(194.19, abs=0.01)
        assert ds.fsp3 == 0.375
        assert (ds.n_rings, ds.n_aromatic_rings, ds.n_phenyl_rings) == (2, 2, 0)
        assert ds.n_rotatable == 0
        assert ds.hbd == 0
        assert ds.net_formal_charge == 0
        assert ds.forbidden_groups == set()

    def test_isotope_flag(self):
        assert compute_descriptors(mol("[13CH4]")).has_isotope

    def test_salt_flags(self):
        ds = compute_descriptors(mol("CC(=O)O.[Na]"))
        assert ds.multi_fragment
        assert ds.element_violation

    def test_bounds_invariants(self, fixture_graphs):
        for row, g in fixture_graphs[:250]:
            ds = compute_descriptors(g)
            assert 0 <= ds.fsp3 <= 1
            assert ds.n_phenyl_rings <= ds.n_aromatic_rings <= ds.n_rings
            assert min(ds.n_rings, ds.n_rotatable, ds.hbd) >= 0


class TestOracleFixture:
    """Frozen-reference agreement at the stated tolerances."""

    def test_mw_everywhere(self, fixture_graphs):
        for row, g in fixture_graphs:
            assert molecular_weight(g) == pytest.approx(float(row["mw"]), abs=0.01), row["smiles"]

    def test_fsp3_exact(self, fixture_graphs):
        for row, g in fixture_graphs:
            got = Fraction(fraction_sp3(g)).limit_denominator(10**9)
            assert got == fixture_fsp3(row["fsp3"]), row["smiles"]

    def test_integer_descriptors(self, fixture_graphs):
        bad = 0
        for row, g in fixture_graphs:
            ds = compute_descriptors(g)
            ok = (
                ds.n_rings == int(row["n_rings"])
                and ds.n_aromatic_rings == int(row["n_aromatic_rings"])
                and ds.n_phenyl_rings == int(row["n_phenyl_rings"])
                and ds.n_rotatable == int(row["n_rotatable"])
                and ds.hbd == int(row["hbd"])
                and ds.net_formal_charge == int(row["net_charge"])
            )
            bad += not ok
        assert bad / len(fixture_graphs) <= 0.01

    def test_tpsa_everywhere(self, fixture_graphs):
        for row, g in fixture_graphs:
            assert tpsa(g) == pytest.approx(float(row["tpsa"]), abs=0.5), row["smiles"]

    def test_clogp(self, fixture_graphs):
        bad = sum(
            abs(clogp(g) - float(row["clogp"])) > 0.05 for row, g in fixture_graphs
        )
        assert bad / len(fixture_graphs) <= 0.05

    def test_structural_flags(self, fixture_graphs):
        for row, g in fixture_graphs:
            ds = compute_descriptors(g)
            assert int(ds.element_violation) == int(row["element_violation"])
            assert int(ds.multi_fragment) == int(row["multi_fragment"])
            assert int(ds.has_isotope) == int(row["has_isotope"])
