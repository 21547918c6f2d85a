"""Molecular descriptors used by the filtering criteria.

Every function takes a fully perceived graph (rings + aromaticity); use
``molecule_from_smiles`` to get one. Polar surface area is typed over
the classic aromaticity flags, partition contributions over the default
flags — see rings.py for why the two models coexist.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from ._data import read_data_text

from .elements import ACCEPTED_ELEMENTS, ATOMIC_MASSES
from .graph import MolecularGraph
from .rings import classic_aromatic_bonds

logger = logging.getLogger(__name__)

__all__ = [
    "DescriptorSet",
    "molecular_weight",
    "fraction_sp3",
    "ring_counts",
    "rotatable_bonds",
    "hydrogen_bond_donors",
    "tpsa",
    "clogp",
    "net_formal_charge",
    "compute_descriptors",
]


@dataclass(slots=True)
class DescriptorSet:
    """The full property vector for one molecule plus structural flags."""

    mw: float
    fsp3: float
    n_rings: int
    n_aromatic_rings: int
    n_phenyl_rings: int
    n_rotatable: int
    net_formal_charge: int
    tpsa: float
    clogp: float
    hbd: int
    forbidden_groups: set[str] = field(default_factory=set)
    element_violation: bool = False
    multi_fragment: bool = False
    has_isotope: bool = False


def molecular_weight(graph: MolecularGraph) -> float:
    """Sum of average atomic masses over heavy atoms plus all hydrogens."""
    total = 0.0
    h_mass = ATOMIC_MASSES["H"]
    for atom in graph.atoms:
        total += ATOMIC_MASSES.get(atom.element, 0.0)
        total += atom.total_h * h_mass
    return total


def fraction_sp3(graph: MolecularGraph) -> float:
    carbons = [a for a in graph.atoms if a.element == "C"]
    if not carbons:
        return 0.0
    sp3 = sum(1 for a in carbons if a.hybridization == "sp3")
    return sp3 / len(carbons)


def ring_counts(graph: MolecularGraph) -> tuple[int, int, int]:
    """(total rings, aromatic rings, phenyl rings) over the SSSR."""
    n_rings = len(graph.rings)
    n_aromatic = sum(graph.ring_aromatic)
    n_phenyl = 0
    for rid, ring in enumerate(graph.rings):
        if (
            graph.ring_aromatic[rid]
            and len(ring) == 6
            and all(graph.atoms[i].element == "C" for i in ring)
        ):
            n_phenyl += 1
    return n_rings, n_aromatic, n_phenyl


def _is_amide_cn(graph: MolecularGraph, a: int, b: int) -> bool:
    for c_idx, n_idx in ((a, b), (b, a)):
        if graph.atoms[c_idx].element != "C" or graph.atoms[n_idx].element != "N":
            continue
        for nbr, bidx in graph.neighbors(c_idx):
            bond = graph.bonds[bidx]
            if bond.order == 2 and graph.atoms[nbr].element == "O":
                return True
    return False


def rotatable_bonds(graph: MolecularGraph) -> int:
    """Acyclic single bonds between non-terminal heavy atoms, amide C-N excluded."""
    count = 0
    heavy_degree = [
        sum(1 for nbr, _ in graph.neighbors(i) if graph.atoms[nbr].element != "H")
        for i in range(len(graph.atoms))
    ]
    for bond in graph.bonds:
        if bond.order != 1 or bond.aromatic or bond.in_ring:
            continue
        a, b = bond.a, bond.b
        if graph.atoms[a].element == "H" or graph.atoms[b].element == "H":
            continue
        if heavy_degree[a] < 2 or heavy_degree[b] < 2:
            continue
        if _is_amide_cn(graph, a, b):
            continue
        count += 1
    return count


def hydrogen_bond_donors(graph: MolecularGraph) -> int:
    """Total count of hydrogens sitting on N or O atoms."""
    return sum(a.total_h for a in graph.atoms if a.element in ("N", "O"))


def net_formal_charge(graph: MolecularGraph) -> int:
    return sum(a.charge for a in graph.atoms)


# -- polar surface area ------------------------------------------------------


def _load_tpsa_table() -> dict[tuple, float]:
    table: dict[tuple, float] = {}
    text = read_data_text("tpsa_fragments.txt")
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, value = line.split("\t")[:2]
        el, chg, h, r3, s, d, t, a = key.split(";")
        table[(el, int(chg), int(h), int(r3), int(s), int(d), int(t), int(a))] = float(value)
    return table


_TPSA_TABLE = _load_tpsa_table()


def tpsa(graph: MolecularGraph, include_s_and_p: bool = False) -> float:
    """Fragment-contribution polar surface area over N/O environments.

    S and P contributions are off by default. Atom environments in
    classically aromatic rings are typed with aromatic bond counts; all
    others fall back to their Kekulé orders, which is what reproduces the
    widely published values for fused amide-like rings.
    """
    aromatic_bonds = classic_aromatic_bonds(graph)
    elements = ("N", "O", "S", "P") if include_s_and_p else ("N", "O")
    total = 0.0
    for idx, atom in enumerate(graph.atoms):
        if atom.element not in elements:
            continue
        n_single = n_double = n_triple = n_arom = 0
        for _, bidx in graph.neighbors(idx):
            if bidx in aromatic_bonds:
                n_arom += 1
            else:
                order = graph.bonds[bidx].order
                if order == 1:
                    n_single += 1
                elif order == 2:
                    n_double += 1
                else:
                    n_triple += 1
        in_3ring = int(any(len(graph.rings[rid]) == 3 for rid in atom.ring_ids))
        key = (
            atom.element,
            atom.charge,
            atom.total_h,
            in_3ring,
            n_single,
            n_double,
            n_triple,
            n_arom,
        )
        value = _TPSA_TABLE.get(key)
        if value is None and in_3ring:
            value = _TPSA_TABLE.get(key[:3] + (0,) + key[4:])
        if value is None:
            value = _tpsa_fallback(atom.element, graph.degree(idx), atom.total_h)
            logger.debug("tpsa fallback for %s environment %s -> %.2f", atom.element, key, value)
        total += value
    return total


def _tpsa_fallback(element: str, n_heavy: int, n_h: int) -> float:
    if element == "N":
        return max(0.0, 30.5 - n_heavy * 8.2 + n_h * 1.5)
    if element == "O":
        return max(0.0, 28.5 - n_heavy * 8.6 + n_h * 1.5)
    return 0.0


# -- partition coefficient ---------------------------------------------------


def _load_crippen_table() -> dict[str, float]:
    table: dict[str, float] = {}
    text = read_data_text("crippen_contributions.txt")
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        name, value = line.split("\t")
        table[name] = float(value)
    return table


_CRIPPEN_TABLE = _load_crippen_table()

_HALOGENS = {"F", "Cl", "Br", "I"}
_METALS = {
    "Li", "Na", "K", "Rb", "Cs", "Be", "Mg", "Ca", "Sr", "Ba", "Al", "Ga",
    "In", "Tl", "Sn", "Pb", "Bi", "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co",
    "Ni", "Cu", "Zn", "Y", "Zr", "Nb", "Mo", "Ru", "Rh", "Pd", "Ag", "Cd",
    "W", "Re", "Os", "Ir", "Pt", "Au", "Hg",
}
_CRIPPEN_HETERO = {"N", "O", "P", "S", "F", "Cl", "Br", "I"}


def _neighbor_info(graph: MolecularGraph, idx: int):
    """(neighbor atom, bond) pairs for typing decisions."""
    return [
        (graph.atoms[nbr], graph.bonds[bidx], nbr)
        for nbr, bidx in graph.neighbors(idx)
    ]


def _type_carbon(graph: MolecularGraph, idx: int) -> str:
    atom = graph.atoms[idx]
    nbrs = _neighbor_info(graph, idx)
    n_h = atom.total_h
    if not atom.aromatic:
        has_double = any(b.order == 2 for _, b, _ in nbrs)
        has_triple = any(b.order == 3 for _, b, _ in nbrs)
        if not has_double and not has_triple:
            aliphatic_c = sum(1 for a, _, _ in nbrs if a.element == "C" and not a.aromatic)
            hetero_aliph = any(
                a.element in _CRIPPEN_HETERO and not a.aromatic for a, _, _ in nbrs
            )
            aromatic_nbr = any(a.aromatic for a, _, _ in nbrs)
            if not hetero_aliph and not aromatic_nbr and aliphatic_c == len(nbrs):
                if n_h >= 2:
                    return "C1"
                return "C2"
            if hetero_aliph:
                return "C3" if n_h >= 2 else "C4"
            if aromatic_nbr:
                if n_h == 3:
                    has_c = any(a.element == "C" and a.aromatic for a, _, _ in nbrs)
                    return "C8" if has_c else "C9"
                if n_h == 2:
                    return "C10"
                if n_h == 1:
                    return "C11"
                return "C12"
            weird = any(
                a.element not in _CRIPPEN_HETERO and a.element not in ("C", "H")
                for a, _, _ in nbrs
            )
            if weird:
                return "C27"
            return "CS"
        # Unsaturated aliphatic carbon.
        double_partners = [a for a, b, _ in nbrs if b.order == 2]
        if any(a.element != "C" and not a.aromatic for a in double_partners):
            return "C5"
        if any(a.aromatic for a in double_partners):
            return "C26"
        if has_triple:
            return "C7"
        # Double bond to aliphatic carbon.
        other = [a for a, b, _ in nbrs if b.order != 2]
        if any(a.aromatic for a in other):
            return "C26"
        if all(not a.aromatic for a in other):
            return "C6"
        return "CS"
    # Aromatic carbon.
    singles = [a for a, b, _ in nbrs if b.order == 1 and not b.aromatic]
    doubles = [a for a, b, _ in nbrs if b.order == 2 and not b.aromatic]
    n_arom_bonds = sum(1 for _, b, _ in nbrs if b.aromatic)
    for a in singles:
        if not a.aromatic and a.element not in ("C", "N", "O", "S") and a.element not in _HALOGENS:
            return "C13"
    for a in singles + doubles:
        if a.element == "F":
            return "C14"
        if a.element == "Cl":
            return "C15"
        if a.element == "Br":
            return "C16"
        if a.element == "I":
            return "C17"
    if n_h == 1:
        return "C18"
    if n_arom_bonds >= 3:
        return "C19"
    if doubles:
        return "C25"
    for a in singles:
        if a.aromatic:
            return "C20"
    for a in singles:
        if a.element == "C":
            return "C21"
        if a.element == "N":
            return "C22"
        if a.element == "O":
            return "C23"
        if a.element == "S":
            return "C24"
    return "CS"


def _type_nitrogen(graph: MolecularGraph, idx: int) -> str:
    atom = graph.atoms[idx]
    nbrs = _neighbor_info(graph, idx)
    n_h = atom.total_h
    chg = atom.charge
    if chg > 0 and n_h >= 1 and not atom.aromatic:
        return "N10"
    if atom.aromatic:
        return "N11" if chg == 0 else ("N12" if chg > 0 else "N14")
    has_double = any(b.order == 2 for _, b, _ in nbrs)
    has_triple = any(b.order == 3 for _, b, _ in nbrs)
    n_doubles = sum(1 for _, b, _ in nbrs if b.order == 2)
    aromatic_nbr = any(a.aromatic for a, _, _ in nbrs)
    if chg == 0:
        if n_h == 2 and len(nbrs) == 1:
            return "N3" if aromatic_nbr else "N1"
        if n_h == 1 and len(nbrs) == 2 and not has_double:
            return "N4" if aromatic_nbr else "N2"
        if n_h == 1 and has_double:
            return "N5"
        if n_h == 0 and has_double and len(nbrs) == 2:
            return "N6"
        if n_h == 0 and len(nbrs) == 3 and not has_double:
            return "N8" if aromatic_nbr else "N7"
        if has_triple and len(nbrs) == 1:
            return "N9"
        return "NS"
    if chg < 0:
        return "N14"
    # Positive, no hydrogens.
    if has_triple or n_doubles >= 2:
        return "N14"
    return "N13"


def _type_oxygen(graph: MolecularGraph, idx: int) -> str:
    atom = graph.atoms[idx]
    nbrs = _neighbor_info(graph, idx)
    if atom.aromatic:
        return "O1"
    if atom.total_h >= 1:
        return "O2"
    doubles = [(a, n) for a, b, n in nbrs if b.order == 2]
    if atom.charge < 0:
        partner = nbrs[0][0] if nbrs else None
        if partner is None:
            return "OS"
        if partner.element == "N":
            return "O5"
        if partner.element == "S":
            return "O6"
        if partner.element == "C":
            partner_idx = nbrs[0][2]
            for nbr2, bidx2 in graph.neighbors(partner_idx):
                bond2 = graph.bonds[bidx2]
                if nbr2 != idx and bond2.order == 2 and graph.atoms[nbr2].element == "O":
                    return "O12"
        return "O7"
    if doubles:
        partner, partner_idx = doubles[0]
        if partner.element in ("N", "O"):
            return "O5"
        if partner.element == "S":
            return "O6"
        if partner.aromatic:
            return "O8"
        if partner.element == "C":
            others = [
                graph.atoms[nbr]
                for nbr, _ in graph.neighbors(partner_idx)
                if nbr != idx and graph.atoms[nbr].element != "H"
            ]
            if any(a.aromatic for a in others):
                return "O10"
            if others and all(a.element not in ("C", "H") for a in others):
                return "O11"
            return "O9"
        return "OS"
    if len(nbrs) == 2:
        if any(a.aromatic for a, _, _ in nbrs):
            return "O4"
        return "O3"
    return "OS"


def _type_hydrogen_on(graph: MolecularGraph, idx: int) -> str:
    """Class of hydrogens attached to heavy atom `idx`."""
    owner = graph.atoms[idx]
    if owner.element in ("C", "H"):
        return "H1"
    if owner.element == "N":
        return "H3"
    if owner.element == "O":
        others = [
            (graph.atoms[nbr], nbr)
            for nbr, _ in graph.neighbors(idx)
            if graph.atoms[nbr].element != "H"
        ]
        if not others:
            return "H2"
        partner, partner_idx = others[0]
        if partner.element == "N":
            return "H3"
        if partner.element in ("O", "S"):
            return "H4"
        if partner.element == "C":
            if partner.aromatic:
                return "H2"
            for nbr2, bidx2 in graph.neighbors(partner_idx):
                bond2 = graph.bonds[bidx2]
                if bond2.order == 2 and graph.atoms[nbr2].element in ("C", "N", "O", "S"):
                    return "H4"
            if partner.hybridization == "sp3":
                return "H2"
            return "HS"
        return "H2"
    return "H2"


def crippen_type(graph: MolecularGraph, idx: int) -> str:
    """Partition-model atom class for a heavy atom."""
    atom = graph.atoms[idx]
    el = atom.element
    if el == "C":
        return _type_carbon(graph, idx)
    if el == "N":
        return _type_nitrogen(graph, idx)
    if el == "O":
        return _type_oxygen(graph, idx)
    if el in _HALOGENS:
        return el if atom.charge == 0 else "Hal"
    if el == "S":
        if atom.aromatic and atom.charge == 0:
            return "S3"
        return "S1" if atom.charge == 0 else "S2"
    if el == "P":
        return "P"
    if el == "H":
        return "H1"
    if el in _METALS:
        return "Me1"
    logger.debug("no partition class for element %s; using Me2 default", el)
    return "Me2"


def clogp(graph: MolecularGraph) -> float:
    """Atom-contribution octanol/water partition estimate.

    Hydrogens are typed by the heavy atom that carries them. Atoms with
    no specific class take their type-class default contribution.
    """
    total = 0.0
    for idx, atom in enumerate(graph.atoms):
        total += _CRIPPEN_TABLE[crippen_type(graph, idx)]
        if atom.total_h:
            total += atom.total_h * _CRIPPEN_TABLE[_type_hydrogen_on(graph, idx)]
    return total


# -- aggregation -------------------------------------------------------------


def compute_descriptors(
    graph: MolecularGraph,
    patterns: list | None = None,
    whitelist: frozenset[str] = ACCEPTED_ELEMENTS,
) -> DescriptorSet:
    """Populate the full descriptor set for one perceived molecule.

    `patterns` defaults to the shipped forbidden-group set; pass an empty
    list to skip substructure matching. `whitelist` is the element set
    used for the violation flag.
    """
    from .patterns import forbidden_patterns, match_pattern

    if patterns is None:
        patterns = forbidden_patterns()
    n_rings, n_aromatic, n_phenyl = ring_counts(graph)
    matched = {p.name for p in patterns if match_pattern(graph, p)}
    return DescriptorSet(
        mw=molecular_weight(graph),
        fsp3=fraction_sp3(graph),
        n_rings=n_rings,
        n_aromatic_rings=n_aromatic,
        n_phenyl_rings=n_phenyl,
        n_rotatable=rotatable_bonds(graph),
        net_formal_charge=net_formal_charge(graph),
        tpsa=tpsa(graph),
        clogp=clogp(graph),
        hbd=hydrogen_bond_donors(graph),
        forbidden_groups=matched,
        element_violation=any(a.element not in whitelist for a in graph.atoms),
        multi_fragment=graph.fragment_count > 1,
        has_isotope=any(a.isotope is not None for a in graph.atoms),
    )
