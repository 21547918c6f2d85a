"""Molecular graph types: atoms, bonds, and the annotated graph.

The graph is built by the parser, then enriched in place by ring and
aromaticity perception. After perception it is treated as immutable;
every descriptor reads it without modifying it.
"""

from __future__ import annotations

from dataclasses import dataclass, field

BOND_ORDER_SINGLE = 1
BOND_ORDER_DOUBLE = 2
BOND_ORDER_TRIPLE = 3


@dataclass(slots=True)
class Atom:
    element: str
    charge: int = 0
    isotope: int | None = None
    explicit_h: int = 0
    implicit_h: int = 0
    aromatic: bool = False
    # Lowercase-SMILES aromaticity as written in the input; perception may
    # confirm or override the final `aromatic` flag.
    aromatic_input: bool = False
    chirality: str | None = None
    ring_ids: set[int] = field(default_factory=set)
    hybridization: str = "other"

    @property
    def total_h(self) -> int:
        return self.explicit_h + self.implicit_h

    @property
    def in_ring(self) -> bool:
        return bool(self.ring_ids)


@dataclass(slots=True)
class Bond:
    a: int
    b: int
    order: int = BOND_ORDER_SINGLE
    aromatic: bool = False
    aromatic_input: bool = False
    in_ring: bool = False
    stereo: str | None = None

    def other(self, idx: int) -> int:
        return self.b if idx == self.a else self.a


class MolecularGraph:
    """Annotated molecular graph.

    Atoms are addressed by their list index. `rings` holds the SSSR as
    tuples of atom indices in traversal order; `ring_aromatic[i]` flags
    ring i under the default perception model and `ring_classic[i]`
    under the stricter classic model used for polar-surface typing.
    """

    def __init__(self) -> None:
        self.atoms: list[Atom] = []
        self.bonds: list[Bond] = []
        self._adjacency: list[list[tuple[int, int]]] = []
        self.rings: list[tuple[int, ...]] = []
        self.ring_aromatic: list[bool] = []
        self.ring_classic: list[bool] = []
        self.fragment_count: int = 1

    # -- construction ---------------------------------------------------

    def add_atom(self, atom: Atom) -> int:
        self.atoms.append(atom)
        self._adjacency.append([])
        return len(self.atoms) - 1

    def add_bond(self, bond: Bond) -> int:
        if bond.a == bond.b:
            raise ValueError("bond endpoints must be distinct")
        if self.bond_between(bond.a, bond.b) is not None:
            raise ValueError(f"duplicate bond between atoms {bond.a} and {bond.b}")
        self.bonds.append(bond)
        idx = len(self.bonds) - 1
        self._adjacency[bond.a].append((bond.b, idx))
        self._adjacency[bond.b].append((bond.a, idx))
        return idx

    # -- queries ---------------------------------------------------------

    def neighbors(self, idx: int) -> list[tuple[int, int]]:
        """(neighbor atom index, bond index) pairs for an atom."""
        return self._adjacency[idx]

    def degree(self, idx: int) -> int:
        return len(self._adjacency[idx])

    def bond_between(self, a: int, b: int) -> Bond | None:
        idx = self.bond_index(a, b)
        return None if idx is None else self.bonds[idx]

    def bond_index(self, a: int, b: int) -> int | None:
        for nbr, bidx in self._adjacency[a]:
            if nbr == b:
                return bidx
        return None

    def bond_order_sum(self, idx: int) -> int:
        """Sum of integer bond orders at an atom (Kekulé orders)."""
        return sum(self.bonds[bidx].order for _, bidx in self._adjacency[idx])

    def heavy_atom_count(self) -> int:
        return sum(1 for a in self.atoms if a.element != "H")

    def components(self) -> list[list[int]]:
        """Connected components as sorted atom-index lists."""
        seen = [False] * len(self.atoms)
        out: list[list[int]] = []
        for start in range(len(self.atoms)):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            comp = []
            while stack:
                cur = stack.pop()
                comp.append(cur)
                for nbr, _ in self._adjacency[cur]:
                    if not seen[nbr]:
                        seen[nbr] = True
                        stack.append(nbr)
            out.append(sorted(comp))
        return out

    def __len__(self) -> int:
        return len(self.atoms)

    def __repr__(self) -> str:
        return (
            f"MolecularGraph(atoms={len(self.atoms)}, bonds={len(self.bonds)}, "
            f"rings={len(self.rings)}, fragments={self.fragment_count})"
        )
