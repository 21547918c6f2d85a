"""Ring perception (SSSR) and aromaticity models.

SSSR selection: candidate cycles are gathered Horton-style (shortest
cycles through every vertex) plus one fundamental-cycle basis as a
completeness fallback, then chosen greedily smallest-first with GF(2)
independence over bond incidence vectors. Ties break on the
lexicographically smallest sorted atom-index tuple, which makes the
perceived ring set reproducible across runs and implementations.

Two aromaticity flags are kept per ring:

* ``ring_aromatic`` — default model: an atom with an exocyclic double
  bond to an acyclic N/O/S contributes 0 pi electrons but stays
  eligible, so e.g. both rings of caffeine count as aromatic.
* ``ring_classic`` — stricter model used for polar-surface typing: such
  exocyclic doubles disqualify the ring, so caffeine's six-membered ring
  is not classically aromatic while its imidazole ring is.

Both apply Hückel 4n+2 ring-by-ring over the Kekulé bond orders.
"""

from __future__ import annotations

from collections import deque

from .graph import MolecularGraph

__all__ = ["perceive_rings", "perceive_aromaticity", "perceive"]


def perceive(graph: MolecularGraph) -> MolecularGraph:
    """Run ring then aromaticity perception; idempotent convenience."""
    return perceive_aromaticity(perceive_rings(graph))


# -- SSSR -------------------------------------------------------------------


def _bond_vector(graph: MolecularGraph, ring: tuple[int, ...]) -> int:
    vec = 0
    bonds = []
    for i, atom in enumerate(ring):
        nxt = ring[(i + 1) % len(ring)]
        bidx = graph.bond_index(atom, nxt)
        if bidx is None:
            return -1
        bonds.append(bidx)
        vec |= 1 << bidx
    if len(set(bonds)) != len(ring):
        return -1
    return vec


def _bfs_tree(graph: MolecularGraph, root: int) -> tuple[dict[int, int], dict[int, int]]:
    dist = {root: 0}
    parent = {root: -1}
    queue = deque([root])
    while queue:
        cur = queue.popleft()
        for nbr, _ in graph.neighbors(cur):
            if nbr not in dist:
                dist[nbr] = dist[cur] + 1
                parent[nbr] = cur
                queue.append(nbr)
    return dist, parent

def _path_to_root(parent: dict[int, int], node: int) -> list[int]:
    path = [node]
    while parent[path[-1]] != -1:
        path.append(parent[path[-1]])
    return path


def _horton_candidates(graph: MolecularGraph) -> set[tuple[int, ...]]:
    """Shortest cycles through each vertex, as canonical rotation tuples."""
    out: set[tuple[int, ...]] = set()
    for root in range(len(graph.atoms)):
        dist, parent = _bfs_tree(graph, root)
        for bond in graph.bonds:
            x, y = bond.a, bond.b
            if x not in dist or y not in dist:
                continue
            if parent.get(x) == y or parent.get(y) == x:
                continue
            px = _path_to_root(parent, x)
            py = _path_to_root(parent, y)
            if set(px) & set(py) != {root}:
                continue
            cycle = px + py[::-1][1:]
            out.add(_canonical(cycle))
    return out


def _fundamental_candidates(graph: MolecularGraph) -> set[tuple[int, ...]]:
    """One fundamental cycle per non-tree edge (guaranteed basis)."""
    out: set[tuple[int, ...]] = set()
    seen: set[int] = set()
    tree_parent: dict[int, tuple[int, int]] = {}
    depth: dict[int, int] = {}
    non_tree: list[tuple[int, int]] = []
    for root in range(len(graph.atoms)):
        if root in seen:
            continue
        seen.add(root)
        depth[root] = 0
        queue = deque([root])
        while queue:
            cur = queue.popleft()
            for nbr, bidx in graph.neighbors(cur):
                if nbr not in seen:
                    seen.add(nbr)
                    tree_parent[nbr] = (cur, bidx)
                    depth[nbr] = depth[cur] + 1
                    queue.append(nbr)
                elif tree_parent.get(cur, (None, None))[1] != bidx:
                    non_tree.append((cur, nbr) if cur < nbr else (nbr, cur))
    for x, y in set(non_tree):
        # Walk both ends up to their lowest common ancestor.
        px, py = [x], [y]
        a, b = x, y
        while depth[a] > depth[b]:
            a = tree_parent[a][0]
            px.append(a)
        while depth[b] > depth[a]:
            b = tree_parent[b][0]
            py.append(b)
        while a != b:
            a = tree_parent[a][0]
            b = tree_parent[b][0]
            px.append(a)
            py.append(b)
        cycle = px + py[-2::-1]
        out.add(_canonical(cycle))
    return out


def _canonical(cycle: list[int]) -> tuple[int, ...]:
    """Canonical rotation/reflection of a cycle's vertex sequence."""
    n = len(cycle)
    best: tuple[int, ...] | None = None
    for seq in (cycle, cycle[::-1]):
        start = seq.index(min(seq))
        rot = tuple(seq[start:] + seq[:start])
        if best is None or rot < best:
            best = rot
    assert best is not None
    return best


def perceive_rings(graph: MolecularGraph) -> MolecularGraph:
    """Populate the SSSR, atom ring memberships, and bond ring flags."""
    target = len(graph.bonds) - len(graph.atoms) + graph.fragment_count
    graph.rings = []
    for atom in graph.atoms:
        atom.ring_ids = set()
    for bond in graph.bonds:
        bond.in_ring = False
    if target <= 0:
        graph.ring_aromatic = []
        graph.ring_classic = []
        return graph

    candidates = _horton_candidates(graph) | _fundamental_candidates(graph)
    scored = []
    for ring in candidates:
        vec = _bond_vector(graph, ring)
        if vec > 0:
            scored.append((len(ring), tuple(sorted(ring)), ring, vec))
    scored.sort()

    basis: list[int] = []
    chosen: list[tuple[int, ...]] = []
    for _, _, ring, vec in scored:
        reduced = vec
        for b in basis:
            reduced = min(reduced, reduced ^ b)
        if reduced:
            basis.append(reduced)
            basis.sort(reverse=True)
            chosen.append(ring)
            if len(chosen) == target:
                break
    graph.rings = chosen

    for rid, ring in enumerate(graph.rings):
        for atom_idx in ring:
            graph.atoms[atom_idx].ring_ids.add(rid)

    # A bond is "in ring" when it lies on any cycle, i.e. is not a bridge;
    # fused systems can have cycle bonds outside the chosen SSSR.
    from .parser import _cycle_bonds

    for bidx in _cycle_bonds(graph):
        graph.bonds[bidx].in_ring = True
    graph.ring_aromatic = [False] * len(graph.rings)
    graph.ring_classic = [False] * len(graph.rings)
    return graph


# -- aromaticity ------------------------------------------------------------

_PI_ELIGIBLE = {"C", "N", "O", "S", "P", "B"}


def _pi_contribution(graph: MolecularGraph, idx: int, ring: set[int], classic: bool) -> int | None:
    """Pi electrons atom `idx` contributes to `ring`, or None if ineligible."""
    atom = graph.atoms[idx]
    if atom.element not in _PI_ELIGIBLE:
        return None
    doubles = []
    for nbr, bidx in graph.neighbors(idx):
        order = graph.bonds[bidx].order
        if order == 3:
            return None
        if order == 2:
            doubles.append(nbr)
    if len(doubles) > 1:
        return None
    if len(doubles) == 1:
        partner = doubles[0]
        if partner in ring:
            return 1
        if graph.atoms[partner].in_ring:
            # Double bond into a fused ring still feeds the shared pi system.
            return 1
        # Exocyclic double bond to an acyclic atom.
        if classic:
            return None
        if atom.element in ("C", "N") and graph.atoms[partner].element in ("N", "O", "S"):
            return 0
        return None
    # No double bond: lone-pair donors.
    heavy = graph.degree(idx)
    connections = heavy + atom.total_h
    if atom.element == "C":
        if atom.charge == -1 and connections == 3:
            return 2
        if atom.charge == 1 and connections == 3:
            return 0
        return None
    if atom.element in ("N", "P"):
        if connections == 3 and atom.charge == 0:
            return 2
        if connections == 2 and atom.charge == -1:
            return 2
        return None
    if atom.element in ("O", "S"):
        if connections == 2:
            return 2
        return None
    return None


def _ring_is_aromatic(graph: MolecularGraph, ring: tuple[int, ...], classic: bool) -> bool:
    if len(ring) < 3:
        return False
    members = set(ring)
    total = 0
    for idx in ring:
        contribution = _pi_contribution(graph, idx, members, classic)
        if contribution is None:
            return False
        total += contribution
    return total % 4 == 2


def perceive_aromaticity(graph: MolecularGraph) -> MolecularGraph:
    """Flag aromatic rings, atoms, and bonds; assign hybridizations.

    Requires rings to be perceived. Input lowercase flags are overridden
    by the perceived result so that Kekulé and aromatic encodings of the
    same molecule produce identical graphs.
    """
    graph.ring_aromatic = [
        _ring_is_aromatic(graph, ring, classic=False) for ring in graph.rings
    ]
    graph.ring_classic = [
        _ring_is_aromatic(graph, ring, classic=True) for ring in graph.rings
    ]

    for atom in graph.atoms:
        atom.aromatic = False
    for bond in graph.bonds:
        bond.aromatic = False
    for rid, ring in enumerate(graph.rings):
        if not graph.ring_aromatic[rid]:
            continue
        for idx in ring:
            graph.atoms[idx].aromatic = True
        for i, idx in enumerate(ring):
            nxt = ring[(i + 1) % len(ring)]
            bond = graph.bond_between(idx, nxt)
            assert bond is not None
            bond.aromatic = True

    for idx, atom in enumerate(graph.atoms):
        orders = [graph.bonds[bidx].order for _, bidx in graph.neighbors(idx)]
        if atom.aromatic:
            atom.hybridization = "sp2"
        elif 3 in orders or orders.count(2) >= 2:
            atom.hybridization = "sp"
        elif 2 in orders:
            atom.hybridization = "sp2"
        elif atom.element in ("C", "N", "O", "S", "P", "B"):
            atom.hybridization = "sp3"
        else:
            atom.hybridization = "other"
    return graph


def classic_aromatic_atoms(graph: MolecularGraph) -> set[int]:
    """Atoms sitting in at least one classically aromatic ring."""
    out: set[int] = set()
    for rid, ring in enumerate(graph.rings):
        if graph.ring_classic[rid]:
            out.update(ring)
    return out


def classic_aromatic_bonds(graph: MolecularGraph) -> set[int]:
    """Bond indices belonging to at least one classically aromatic ring."""
    out: set[int] = set()
    for rid, ring in enumerate(graph.rings):
        if not graph.ring_classic[rid]:
            continue
        for i, idx in enumerate(ring):
            nxt = ring[(i + 1) % len(ring)]
            bidx = graph.bond_index(idx, nxt)
            assert bidx is not None
            out.add(bidx)
    return out
