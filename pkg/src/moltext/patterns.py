"""Substructure templates and subgraph-isomorphism matching.

A pattern is a small connected graph whose atoms constrain element,
charge, aromaticity, ring membership, and hybridization, and whose bonds
constrain order and ring membership. Matching asks for an injective
mapping of pattern atoms onto molecule atoms that realizes every pattern
bond; extra molecule bonds are allowed (monomorphism semantics).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from ._data import read_data_text

from .graph import MolecularGraph

__all__ = [
    "PatternAtom",
    "PatternBond",
    "SubstructurePattern",
    "match_pattern",
    "forbidden_patterns",
]

_ORDER_NAMES = {"single": 1, "double": 2, "triple": 3, "aromatic": 0}


@dataclass(slots=True)
class PatternAtom:
    elements: frozenset[str]
    charge: int = 0
    aromatic: str = "no"  # yes | no | any
    ring: str = "any"
    hybridization: str = "any"


@dataclass(slots=True)
class PatternBond:
    i: int
    j: int
    order: str  # single | double | triple | aromatic
    ring: str = "any"


@dataclass(slots=True)
class SubstructurePattern:
    name: str
    atoms: list[PatternAtom] = field(default_factory=list)
    bonds: list[PatternBond] = field(default_factory=list)

    def __post_init__(self) -> None:
        if len(self.atoms) > 8:
            raise ValueError(f"pattern {self.name} exceeds 8 atoms")
        if self.atoms and not self._connected():
            raise ValueError(f"pattern {self.name} is not connected")

    def _connected(self) -> bool:
        adj: dict[int, set[int]] = {i: set() for i in range(len(self.atoms))}
        for bond in self.bonds:
            adj[bond.i].add(bond.j)
            adj[bond.j].add(bond.i)
        seen = {0}
        stack = [0]
        while stack:
            for nbr in adj[stack.pop()]:
                if nbr not in seen:
                    seen.add(nbr)
                    stack.append(nbr)
        return len(seen) == len(self.atoms)


def _atom_ok(graph: MolecularGraph, idx: int, want: PatternAtom) -> bool:
    atom = graph.atoms[idx]
    if atom.element not in want.elements:
        return False
    if atom.charge != want.charge:
        return False
    if want.aromatic != "any" and atom.aromatic != (want.aromatic == "yes"):
        return False
    if want.ring != "any" and atom.in_ring != (want.ring == "yes"):
        return False
    if want.hybridization != "any" and atom.hybridization != want.hybridization:
        return False
    return True


def _bond_ok(graph: MolecularGraph, a: int, b: int, want: PatternBond) -> bool:
    bond = graph.bond_between(a, b)
    if bond is None:
        return False
    if want.order == "aromatic":
        if not bond.aromatic:
            return False
    else:
        if bond.aromatic or bond.order != _ORDER_NAMES[want.order]:
            return False
    if want.ring != "any" and bond.in_ring != (want.ring == "yes"):
        return False
    return True


def _prefilter(graph: MolecularGraph, pattern: SubstructurePattern) -> bool:
    """Cheap necessary conditions: element supply, charges, bond kinds."""
    available: dict[str, int] = {}
    charges: set[int] = set()
    for atom in graph.atoms:
        available[atom.element] = available.get(atom.element, 0) + 1
        charges.add(atom.charge)
    needed: dict[str, int] = {}
    for want in pattern.atoms:
        if want.charge not in charges:
            return False
        if len(want.elements) == 1:
            el = next(iter(want.elements))
            needed[el] = needed.get(el, 0) + 1
        elif not any(el in available for el in want.elements):
            return False
    if any(available.get(el, 0) < count for el, count in needed.items()):
        return False
    orders = {b.order for b in graph.bonds}
    has_aromatic = any(b.aromatic for b in graph.bonds)
    has_ring = any(b.in_ring for b in graph.bonds)
    for bond in pattern.bonds:
        if bond.order == "aromatic" and not has_aromatic:
            return False
        if bond.order in ("double", "triple") and _ORDER_NAMES[bond.order] not in orders:
            return False
        if bond.ring == "yes" and not has_ring:
            return False
    return True


def match_pattern(graph: MolecularGraph, pattern: SubstructurePattern) -> bool:
    """True iff the pattern embeds somewhere in the molecule."""
    n_pat = len(pattern.atoms)
    if n_pat == 0 or n_pat > len(graph.atoms):
        return False
    if not _prefilter(graph, pattern):
        return False

    # Order pattern atoms so each one after the first touches a mapped atom.
    order: list[int] = [0]
    adj: dict[int, list[PatternBond]] = {i: [] for i in range(n_pat)}
    for bond in pattern.bonds:
        adj[bond.i].append(bond)
        adj[bond.j].append(bond)
    while len(order) < n_pat:
        for cand in range(n_pat):
            if cand in order:
                continue
            if any((b.i in order or b.j in order) for b in adj[cand]):
                order.append(cand)
                break

    mapping: dict[int, int] = {}
    used: set[int] = set()

    def candidates(p_idx: int):
        anchors = [
            b for b in adj[p_idx] if (b.i if b.j == p_idx else b.j) in mapping
        ]
        if anchors:
            first = anchors[0]
            anchor_graph = mapping[first.i if first.j == p_idx else first.j]
            pool = [nbr for nbr, _ in graph.neighbors(anchor_graph)]
        else:
            pool = range(len(graph.atoms))
        want = pattern.atoms[p_idx]
        for g_idx in pool:
            if g_idx in used or not _atom_ok(graph, g_idx, want):
                continue
            ok = True
            for b in adj[p_idx]:
                other = b.i if b.j == p_idx else b.j
                if other in mapping and not _bond_ok(graph, mapping[other], g_idx, b):
                    ok = False
                    break
            if ok:
                yield g_idx

    def backtrack(depth: int) -> bool:
        if depth == n_pat:
            return True
        p_idx = order[depth]
        for g_idx in candidates(p_idx):
            mapping[p_idx] = g_idx
            used.add(g_idx)
            if backtrack(depth + 1):
                return True
            del mapping[p_idx]
            used.discard(g_idx)
        return False

    return backtrack(0)


# -- shipped forbidden-group set ---------------------------------------------


def _parse_atom_line(parts: list[str]) -> tuple[int, PatternAtom]:
    idx = int(parts[1])
    elements = frozenset(parts[2].split("|"))
    kwargs: dict = {}
    for token in parts[3:]:
        key, value = token.split("=")
        if key == "charge":
            kwargs["charge"] = int(value)
        elif key == "arom":
            kwargs["aromatic"] = value
        elif key == "ring":
            kwargs["ring"] = value
        elif key == "hyb":
            kwargs["hybridization"] = value
        else:
            raise ValueError(f"unknown atom constraint {key!r}")
    return idx, PatternAtom(elements=elements, **kwargs)


def _parse_bond_line(parts: list[str]) -> PatternBond:
    kwargs: dict = {}
    for token in parts[4:]:
        key, value = token.split("=")
        if key != "ring":
            raise ValueError(f"unknown bond constraint {key!r}")
        kwargs["ring"] = value
    return PatternBond(i=int(parts[1]), j=int(parts[2]), order=parts[3], **kwargs)


@lru_cache(maxsize=1)
def forbidden_patterns() -> tuple[SubstructurePattern, ...]:
    """The shipped unwanted-group templates, in file order."""
    text = read_data_text("forbidden_patterns.txt")
    patterns: list[SubstructurePattern] = []
    name: str | None = None
    atoms: dict[int, PatternAtom] = {}
    bonds: list[PatternBond] = []

    def flush() -> None:
        nonlocal atoms, bonds
        if name is not None:
            ordered = [atoms[i] for i in sorted(atoms)]
            patterns.append(SubstructurePattern(name=name, atoms=ordered, bonds=bonds))
        atoms, bonds = {}, []

    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if line.startswith("["):
            flush()
            name = line.strip("[]")
            continue
        parts = line.split()
        if parts[0] == "atom":
            idx, atom = _parse_atom_line(parts)
            atoms[idx] = atom
        elif parts[0] == "bond":
            bonds.append(_parse_bond_line(parts))
        else:
            raise ValueError(f"unparseable pattern line: {raw!r}")
    flush()
    return tuple(patterns)
