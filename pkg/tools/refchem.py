"""Independent reference chemistry used only to build frozen test fixtures.

This module deliberately does NOT import the moltext package. It is a
second implementation of the same published methods, written with
different machinery (regex tokenizer, networkx matching and cycle
basis, freshly typed contribution tables) so that fixture comparisons
cross-check the package rather than echo it. Where the installed RDKit
toolkit is available, the fixture generator prefers it over this module.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

MASSES = {
    "H": 1.008, "B": 10.811, "C": 12.011, "N": 14.007, "O": 15.999,
    "F": 18.998, "Si": 28.086, "P": 30.974, "S": 32.066, "Cl": 35.453,
    "Br": 79.904, "I": 126.904, "Na": 22.990, "K": 39.098, "Li": 6.941,
    "Ca": 40.078, "Mg": 24.305, "Fe": 55.845, "Zn": 65.380, "Se": 78.971,
    "As": 74.922, "Al": 26.982,
}

VALENCES = {
    "H": (1,), "B": (3,), "C": (4,), "N": (3,), "O": (2,), "P": (3, 5),
    "S": (2, 4, 6), "F": (1,), "Cl": (1,), "Br": (1,), "I": (1,),
}

RIGHT_SIDE = {"N", "O", "P", "S", "F", "Cl", "Br", "I"}
WHITELIST = {"H", "C", "N", "O", "S", "F", "Cl", "Br"}

_TOKEN = re.compile(
    r"(\[[^\]]*\]|Br|Cl|[BCNOPSFI]|[bcnops]|%\d\d|\d|[-=#:/\\().])"
)
_BRACKET = re.compile(
    r"^\[(?P<iso>\d+)?(?P<el>[A-Z][a-z]?|as|se|[bcnops])(?P<chi>@{1,2})?"
    r"(?P<h>H\d*)?(?P<chg>\+{1,}\d*|-{1,}\d*)?(?::\d+)?\]$"
)


@dataclass
class RAtom:
    element: str
    aromatic_in: bool = False
    charge: int = 0
    isotope: int | None = None
    h_explicit: int = 0
    h_implicit: int = 0
    bracket: bool = False
    aromatic: bool = False

    @property
    def h_total(self) -> int:
        return self.h_explicit + self.h_implicit


@dataclass
class RMol:
    atoms: list[RAtom] = field(default_factory=list)
    graph: nx.Graph = field(default_factory=nx.Graph)
    rings: list[list[int]] = field(default_factory=list)
    ring_flags: list[bool] = field(default_factory=list)      # default model
    ring_classic: list[bool] = field(default_factory=list)    # strict model
    fragments: int = 1

    def order(self, a: int, b: int) -> int:
        return self.graph.edges[a, b]["order"]


class RefParseError(ValueError):
    pass


def _allowed(element: str, charge: int):
    base = VALENCES.get(element)
    if base is None:
        return None
    if charge == 0:
        return base
    if element in RIGHT_SIDE:
        return tuple(v + charge for v in base if v + charge >= 0)
    return tuple(v - abs(charge) for v in base if v - abs(charge) >= 0)


def _parse_bracket(token: str) -> RAtom:
    m = _BRACKET.match(token)
    if not m:
        raise RefParseError(f"bad bracket atom {token}")
    symbol = m.group("el")
    aromatic = symbol.islower()
    element = symbol.capitalize() if len(symbol) <= 2 and aromatic else symbol
    if aromatic and symbol in ("se", "as"):
        element = symbol.capitalize()
    h_text = m.group("h")
    n_h = 0
    if h_text:
        n_h = int(h_text[1:]) if len(h_text) > 1 else 1
    chg_text = m.group("chg")
    charge = 0
    if chg_text:
        sign = 1 if chg_text[0] == "+" else -1
        digits = chg_text.lstrip("+-")
        charge = sign * (int(digits) if digits else chg_text.count(chg_text[0]))
    return RAtom(
        element=element,
        aromatic_in=aromatic,
        charge=charge,
        isotope=int(m.group("iso")) if m.group("iso") else None,
        h_explicit=n_h,
        bracket=True,
    )


def parse(smiles: str) -> RMol:
    """Tokenize and build the molecular graph; then kekulize and add H."""
    mol = RMol()
    pos = 0
    prev: int | None = None
    pending: str | None = None
    stack: list[int] = []
    ring_open: dict[str, tuple[int, str | None]] = {}
    matched = _TOKEN.findall(smiles)
    if "".join(matched) != smiles:
        raise RefParseError(f"untokenizable SMILES {smiles!r}")

    def add_atom(atom: RAtom) -> int:
        idx = len(mol.atoms)
        mol.atoms.append(atom)
        mol.graph.add_node(idx)
        return idx

    def add_bond(a: int, b: int, symbol: str | None, arom_pair: bool) -> None:
        if symbol in ("/", "\\"):
            symbol = None
        if symbol == ":":
            order, arom = 1, True
        elif symbol == "=":
            order, arom = 2, False
        elif symbol == "#":
            order, arom = 3, False
        elif symbol == "-":
            order, arom = 1, False
        else:
            order, arom = 1, arom_pair
        if mol.graph.has_edge(a, b):
            raise RefParseError("duplicate bond")
        mol.graph.add_edge(a, b, order=order, aromatic_in=arom, aromatic=False)

    for token in matched:
        if token in "-=#:/\\":
            pending = token
        elif token == "(":
            if prev is None:
                raise RefParseError("branch before atom")
            stack.append(prev)
        elif token == ")":
            prev = stack.pop()
        elif token == ".":
            prev = None
            mol.fragments += 1
        elif token.isdigit() or token.startswith("%"):
            key = token.lstrip("%")
            if key in ring_open:
                other, sym0 = ring_open.pop(key)
                sym = pending or sym0
                arom = mol.atoms[other].aromatic_in and mol.atoms[prev].aromatic_in
                add_bond(other, prev, sym, arom)
            else:
                ring_open[key] = (prev, pending)
            pending = None
        else:
            atom = _parse_bracket(token) if token.startswith("[") else RAtom(
                element=token.capitalize() if token.islower() else token,
                aromatic_in=token.islower(),
            )
            idx = add_atom(atom)
            if prev is not None:
                arom = atom.aromatic_in and mol.atoms[prev].aromatic_in
                add_bond(prev, idx, pending, arom)
            pending = None
            prev = idx

    if ring_open:
        raise RefParseError("unclosed ring")
    if stack:
        raise RefParseError("unclosed branch")
    mol.fragments = nx.number_connected_components(mol.graph) if mol.atoms else 0
    _kekulize(mol)
    _hydrogens(mol)
    _perceive(mol)
    return mol


def _sigma(mol: RMol, idx: int) -> int:
    return sum(mol.graph.edges[idx, nbr]["order"] for nbr in mol.graph[idx])


def _kekulize(mol: RMol) -> None:
    needs = []
    for idx, atom in enumerate(mol.atoms):
        if not atom.aromatic_in:
            continue
        sigma = _sigma(mol, idx) + atom.h_explicit
        allowed = _allowed(atom.element, atom.charge)
        if allowed is None:
            continue
        target = next((v for v in allowed if v >= sigma), None)
        if target is not None and sigma < target:
            needs.append(idx)
    if not needs:
        return
    need_set = set(needs)
    cyc_edges = set()
    for cycle in nx.cycle_basis(mol.graph):
        for i, node in enumerate(cycle):
            cyc_edges.add(frozenset((node, cycle[(i + 1) % len(cycle)])))
    h = nx.Graph()
    h.add_nodes_from(needs)
    for a, b, data in mol.graph.edges(data=True):
        if a in need_set and b in need_set and data["aromatic_in"]:
            if frozenset((a, b)) in cyc_edges:
                h.add_edge(a, b)
    matching = nx.max_weight_matching(h, maxcardinality=True)
    covered = {n for pair in matching for n in pair}
    if covered != need_set:
        raise RefParseError("kekulization failed")
    for a, b in matching:
        mol.graph.edges[a, b]["order"] = 2


def _hydrogens(mol: RMol) -> None:
    for idx, atom in enumerate(mol.atoms):
        if atom.bracket:
            continue
        sigma = _sigma(mol, idx)
        allowed = _allowed(atom.element, atom.charge)
        if allowed is None:
            continue
        target = next((v for v in allowed if v >= sigma), None)
        if target is None:
            raise RefParseError(f"valence overflow on {atom.element}")
        atom.h_implicit = target - sigma
    for idx, atom in enumerate(mol.atoms):
        allowed = _allowed(atom.element, atom.charge)
        if allowed is None:
            continue
        if _sigma(mol, idx) + atom.h_total not in allowed:
            raise RefParseError(f"valence check failed on atom {idx}")


def _order_cycle(mol: RMol, nodes: list[int]) -> list[int]:
    sub = mol.graph.subgraph(nodes)
    if all(sub.degree(n) == 2 for n in nodes):
        walk = [min(nodes)]
        prev = None
        while len(walk) < len(nodes):
            nxts = [n for n in sub[walk[-1]] if n != prev]
            prev = walk[-1]
            walk.append(nxts[0])
        return walk
    # Chorded candidate: take the shortest cycle found inside the subgraph.
    best: list[int] | None = None
    for a, b in sub.edges:
        sub2 = nx.restricted_view(sub, [], [(a, b)])
        try:
            path = nx.shortest_path(sub2, a, b)
        except nx.NetworkXNoPath:
            continue
        if best is None or len(path) < len(best):
            best = path
    if best is None:
        raise RefParseError("cannot order cycle")
    return best


def _pi(mol: RMol, idx: int, ring: set[int], strict: bool) -> int | None:
    atom = mol.atoms[idx]
    if atom.element not in ("C", "N", "O", "S", "P", "B"):
        return None
    doubles = [n for n in mol.graph[idx] if mol.order(idx, n) == 2]
    if any(mol.order(idx, n) == 3 for n in mol.graph[idx]):
        return None
    if len(doubles) > 1:
        return None
    if doubles:
        partner = doubles[0]
        if partner in ring:
            return 1
        partner_in_ring = any(partner in r for r in mol.rings)
        if partner_in_ring:
            return 1
        if strict:
            return None
        if atom.element in ("C", "N") and mol.atoms[partner].element in ("N", "O", "S"):
            return 0
        return None
    conn = mol.graph.degree(idx) + atom.h_total
    if atom.element == "C":
        if atom.charge == -1 and conn == 3:
            return 2
        if atom.charge == 1 and conn == 3:
            return 0
        return None
    if atom.element in ("N", "P"):
        if conn == 3 and atom.charge == 0:
            return 2
        if conn == 2 and atom.charge == -1:
            return 2
        return None
    if atom.element in ("O", "S") and conn == 2:
        return 2
    return None


def _perceive(mol: RMol) -> None:
    raw = nx.minimum_cycle_basis(mol.graph) if mol.atoms else []
    mol.rings = [_order_cycle(mol, nodes) for nodes in raw]
    mol.ring_flags = []
    mol.ring_classic = []
    for ring in mol.rings:
        members = set(ring)
        votes = [_pi(mol, i, members, strict=False) for i in ring]
        strict_votes = [_pi(mol, i, members, strict=True) for i in ring]
        mol.ring_flags.append(
            all(v is not None for v in votes) and sum(votes) % 4 == 2  # type: ignore[arg-type]
        )
        mol.ring_classic.append(
            all(v is not None for v in strict_votes)
            and sum(strict_votes) % 4 == 2  # type: ignore[arg-type]
        )
    for idx, atom in enumerate(mol.atoms):
        atom.aromatic = any(
            idx in set(ring)
            for ring, flag in zip(mol.rings, mol.ring_flags)
            if flag
        )
    for rid, ring in enumerate(mol.rings):
        if not mol.ring_flags[rid]:
            continue
        for i, node in enumerate(ring):
            nxt = ring[(i + 1) % len(ring)]
            mol.graph.edges[node, nxt]["aromatic"] = True


# -- descriptors --------------------------------------------------------------


def weight(mol: RMol) -> float:
    return sum(
        MASSES.get(a.element, 0.0) + a.h_total * MASSES["H"] for a in mol.atoms
    )


def fsp3(mol: RMol) -> Fraction:
    carbons = [i for i, a in enumerate(mol.atoms) if a.element == "C"]
    if not carbons:
        return Fraction(0)
    count = 0
    for i in carbons:
        if mol.atoms[i].aromatic:
            continue
        if all(mol.order(i, n) == 1 for n in mol.graph[i]):
            count += 1
    return Fraction(count, len(carbons))


def ring_summary(mol: RMol) -> tuple[int, int, int]:
    n = len(mol.rings)
    n_ar = sum(mol.ring_flags)
    n_ph = sum(
        1
        for ring, flag in zip(mol.rings, mol.ring_flags)
        if flag and len(ring) == 6 and all(mol.atoms[i].element == "C" for i in ring)
    )
    return n, n_ar, n_ph


def rotatable(mol: RMol) -> int:
    bridges = set(frozenset(e) for e in nx.bridges(mol.graph)) if mol.atoms else set()
    count = 0
    for a, b, data in mol.graph.edges(data=True):
        if data["order"] != 1 or data["aromatic"]:
            continue
        if frozenset((a, b)) not in bridges:
            continue  # cycle bonds never rotate
        if mol.graph.degree(a) < 2 or mol.graph.degree(b) < 2:
            continue
        amide = False
        for c, n in ((a, b), (b, a)):
            if mol.atoms[c].element == "C" and mol.atoms[n].element == "N":
                if any(
                    mol.order(c, x) == 2 and mol.atoms[x].element == "O"
                    for x in mol.graph[c]
                ):
                    amide = True
        if not amide:
            count += 1
    return count


def donors(mol: RMol) -> int:
    return sum(a.h_total for a in mol.atoms if a.element in ("N", "O"))


def net_charge(mol: RMol) -> int:
    return sum(a.charge for a in mol.atoms)


_TPSA = {
    # (element, charge, nH, in3ring, nS, nD, nT, nA) -> contribution
    ("N", 0, 0, 0, 3, 0, 0, 0): 3.24,
    ("N", 0, 0, 1, 3, 0, 0, 0): 3.01,
    ("N", 0, 0, 0, 1, 1, 0, 0): 12.36,
    ("N", 0, 0, 0, 0, 0, 1, 0): 23.79,
    ("N", 0, 0, 0, 1, 2, 0, 0): 11.68,
    ("N", 0, 0, 0, 0, 1, 1, 0): 13.60,
    ("N", 0, 1, 0, 2, 0, 0, 0): 12.03,
    ("N", 0, 1, 1, 2, 0, 0, 0): 21.94,
    ("N", 0, 1, 0, 0, 1, 0, 0): 23.85,
    ("N", 0, 2, 0, 1, 0, 0, 0): 26.02,
    ("N", 1, 0, 0, 4, 0, 0, 0): 0.0,
    ("N", 1, 0, 0, 2, 1, 0, 0): 3.01,
    ("N", 1, 0, 0, 1, 0, 1, 0): 4.36,
    ("N", 1, 1, 0, 3, 0, 0, 0): 4.44,
    ("N", 1, 1, 0, 1, 1, 0, 0): 13.97,
    ("N", 1, 2, 0, 2, 0, 0, 0): 16.61,
    ("N", 1, 2, 0, 0, 1, 0, 0): 25.59,
    ("N", 1, 3, 0, 1, 0, 0, 0): 27.64,
    ("N", 0, 0, 0, 0, 0, 0, 2): 12.89,
    ("N", 0, 0, 0, 0, 0, 0, 3): 4.41,
    ("N", 0, 0, 0, 1, 0, 0, 2): 4.93,
    ("N", 0, 0, 0, 0, 1, 0, 2): 8.39,
    ("N", 0, 1, 0, 0, 0, 0, 2): 15.79,
    ("N", 1, 0, 0, 0, 0, 0, 3): 4.10,
    ("N", 1, 0, 0, 1, 0, 0, 2): 3.88,
    ("N", 1, 1, 0, 0, 0, 0, 2): 14.14,
    ("O", 0, 0, 0, 2, 0, 0, 0): 9.23,
    ("O", 0, 0, 1, 2, 0, 0, 0): 12.53,
    ("O", 0, 0, 0, 0, 1, 0, 0): 17.07,
    ("O", 0, 1, 0, 1, 0, 0, 0): 20.23,
    ("O", -1, 0, 0, 1, 0, 0, 0): 23.06,
    ("O", 0, 0, 0, 0, 0, 0, 2): 13.14,
}


def tpsa(mol: RMol) -> float:
    classic_edges = set()
    for rid, ring in enumerate(mol.rings):
        if not mol.ring_classic[rid]:
            continue
        for i, node in enumerate(ring):
            classic_edges.add(frozenset((node, ring[(i + 1) % len(ring)])))
    total = 0.0
    for idx, atom in enumerate(mol.atoms):
        if atom.element not in ("N", "O"):
            continue
        ns = nd = nt = na = 0
        for nbr in mol.graph[idx]:
            if frozenset((idx, nbr)) in classic_edges:
                na += 1
            else:
                order = mol.order(idx, nbr)
                ns += order == 1
                nd += order == 2
                nt += order == 3
        in3 = int(any(len(r) == 3 and idx in set(r) for r in mol.rings))
        key = (atom.element, atom.charge, atom.h_total, in3, ns, nd, nt, na)
        value = _TPSA.get(key)
        if value is None and in3:
            value = _TPSA.get((atom.element, atom.charge, atom.h_total, 0, ns, nd, nt, na))
        if value is None:
            if atom.element == "N":
                value = max(0.0, 30.5 - mol.graph.degree(idx) * 8.2 + atom.h_total * 1.5)
            else:
                value = max(0.0, 28.5 - mol.graph.degree(idx) * 8.6 + atom.h_total * 1.5)
        total += value
    return total


_CRIPPEN = {
    "C1": 0.1441, "C2": 0.0, "C3": -0.2035, "C4": -0.2051, "C5": -0.2783,
    "C6": 0.1551, "C7": 0.0017, "C8": 0.08452, "C9": -0.1444, "C10": -0.0516,
    "C11": 0.1193, "C12": -0.0967, "C13": -0.5443, "C14": 0.0, "C15": 0.245,
    "C16": 0.198, "C17": 0.0, "C18": 0.1581, "C19": 0.2955, "C20": 0.2713,
    "C21": 0.136, "C22": 0.4619, "C23": 0.5437, "C24": 0.1893, "C25": -0.8186,
    "C26": 0.264, "C27": 0.2148, "CS": 0.08129,
    "H1": 0.123, "H2": -0.2677, "H3": 0.2142, "H4": 0.298, "HS": 0.1125,
    "N1": -1.019, "N2": -0.7096, "N3": -1.027, "N4": -0.5188, "N5": 0.08387,
    "N6": 0.1836, "N7": -0.3187, "N8": -0.4458, "N9": 0.01508, "N10": -1.95,
    "N11": -0.3239, "N12": -1.119, "N13": -0.3396, "N14": 0.2887, "NS": -0.4806,
    "O1": 0.1552, "O2": -0.2893, "O3": -0.0684, "O4": -0.4195, "O5": 0.0335,
    "O6": -0.3339, "O7": -1.189, "O8": 0.1788, "O9": -0.1526, "O10": 0.1129,
    "O11": 0.4833, "O12": -1.326, "OS": -0.1188,
    "F": 0.4202, "Cl": 0.6895, "Br": 0.8456, "I": 0.8857, "Hal": -2.996,
    "P": 0.8612, "S1": 0.6482, "S2": -0.0024, "S3": 0.6237,
    "Me1": -0.3808, "Me2": -0.0025,
}

_HET = {"N", "O", "P", "S", "F", "Cl", "Br", "I"}


def _carbon_class(mol: RMol, idx: int) -> str:
    atom = mol.atoms[idx]
    nbrs = list(mol.graph[idx])
    n_h = atom.h_total
    if atom.aromatic:
        singles = [n for n in nbrs if mol.order(idx, n) == 1 and not mol.graph.edges[idx, n]["aromatic"]]
        arom_bonds = [n for n in nbrs if mol.graph.edges[idx, n]["aromatic"]]
        dbl = [n for n in nbrs if mol.order(idx, n) == 2 and not mol.graph.edges[idx, n]["aromatic"]]
        for n in singles:
            a = mol.atoms[n]
            if not a.aromatic and a.element not in ("C", "N", "O", "S") and a.element not in ("F", "Cl", "Br", "I"):
                return "C13"
        for n in singles + dbl:
            el = mol.atoms[n].element
            if el == "F":
                return "C14"
            if el == "Cl":
                return "C15"
            if el == "Br":
                return "C16"
            if el == "I":
                return "C17"
        if n_h == 1:
            return "C18"
        if len(arom_bonds) >= 3:
            return "C19"
        if dbl:
            return "C25"
        for n in singles:
            if mol.atoms[n].aromatic:
                return "C20"
        for n in singles:
            el = mol.atoms[n].element
            if el == "C":
                return "C21"
            if el == "N":
                return "C22"
            if el == "O":
                return "C23"
            if el == "S":
                return "C24"
        return "CS"
    dbl = [n for n in nbrs if mol.order(idx, n) == 2]
    trp = [n for n in nbrs if mol.order(idx, n) == 3]
    if not dbl and not trp:
        het = any(mol.atoms[n].element in _HET and not mol.atoms[n].aromatic for n in nbrs)
        arom = any(mol.atoms[n].aromatic for n in nbrs)
        pure = all(mol.atoms[n].element == "C" and not mol.atoms[n].aromatic for n in nbrs)
        if pure and not het:
            return "C1" if n_h >= 2 else "C2"
        if het:
            return "C3" if n_h >= 2 else "C4"
        if arom:
            if n_h == 3:
                on_c = any(mol.atoms[n].element == "C" and mol.atoms[n].aromatic for n in nbrs)
                return "C8" if on_c else "C9"
            return {2: "C10", 1: "C11"}.get(n_h, "C12")
        if any(mol.atoms[n].element not in _HET and mol.atoms[n].element != "C" for n in nbrs):
            return "C27"
        return "CS"
    if any(mol.atoms[n].element != "C" and not mol.atoms[n].aromatic for n in dbl):
        return "C5"
    if any(mol.atoms[n].aromatic for n in dbl):
        return "C26"
    if trp:
        return "C7"
    others = [n for n in nbrs if mol.order(idx, n) != 2]
    if any(mol.atoms[n].aromatic for n in others):
        return "C26"
    return "C6"


def _nitrogen_class(mol: RMol, idx: int) -> str:
    atom = mol.atoms[idx]
    if atom.charge > 0 and atom.h_total >= 1 and not atom.aromatic:
        return "N10"
    if atom.aromatic:
        if atom.charge == 0:
            return "N11"
        return "N12" if atom.charge > 0 else "N14"
    nbrs = list(mol.graph[idx])
    n_h = atom.h_total
    dbl = [n for n in nbrs if mol.order(idx, n) == 2]
    trp = [n for n in nbrs if mol.order(idx, n) == 3]
    arom = any(mol.atoms[n].aromatic for n in nbrs)
    if atom.charge == 0:
        if n_h == 2 and len(nbrs) == 1:
            return "N3" if arom else "N1"
        if n_h == 1 and len(nbrs) == 2 and not dbl:
            return "N4" if arom else "N2"
        if n_h == 1 and dbl:
            return "N5"
        if n_h == 0 and dbl and len(nbrs) == 2:
            return "N6"
        if n_h == 0 and len(nbrs) == 3 and not dbl:
            return "N8" if arom else "N7"
        if trp and len(nbrs) == 1:
            return "N9"
        return "NS"
    if atom.charge < 0:
        return "N14"
    if trp or len(dbl) >= 2:
        return "N14"
    return "N13"


def _oxygen_class(mol: RMol, idx: int) -> str:
    atom = mol.atoms[idx]
    if atom.aromatic:
        return "O1"
    if atom.h_total >= 1:
        return "O2"
    nbrs = list(mol.graph[idx])
    dbl = [n for n in nbrs if mol.order(idx, n) == 2]
    if atom.charge < 0:
        if not nbrs:
            return "OS"
        p = mol.atoms[nbrs[0]]
        if p.element == "N":
            return "O5"
        if p.element == "S":
            return "O6"
        if p.element == "C" and any(
            mol.order(nbrs[0], x) == 2 and mol.atoms[x].element == "O"
            for x in mol.graph[nbrs[0]]
        ):
            return "O12"
        return "O7"
    if dbl:
        p_idx = dbl[0]
        p = mol.atoms[p_idx]
        if p.element in ("N", "O"):
            return "O5"
        if p.element == "S":
            return "O6"
        if p.aromatic:
            return "O8"
        if p.element == "C":
            others = [mol.atoms[x] for x in mol.graph[p_idx] if x != idx]
            if any(a.aromatic for a in others):
                return "O10"
            if others and all(a.element not in ("C", "H") for a in others):
                return "O11"
            return "O9"
        return "OS"
    if len(nbrs) == 2:
        return "O4" if any(mol.atoms[n].aromatic for n in nbrs) else "O3"
    return "OS"


def _h_class(mol: RMol, idx: int) -> str:
    owner = mol.atoms[idx]
    if owner.element in ("C", "H"):
        return "H1"
    if owner.element == "N":
        return "H3"
    if owner.element == "O":
        others = [n for n in mol.graph[idx]]
        if not others:
            return "H2"
        p_idx = others[0]
        p = mol.atoms[p_idx]
        if p.element == "N":
            return "H3"
        if p.element in ("O", "S"):
            return "H4"
        if p.element == "C":
            if p.aromatic:
                return "H2"
            if any(
                mol.order(p_idx, x) == 2 and mol.atoms[x].element in ("C", "N", "O", "S")
                for x in mol.graph[p_idx]
            ):
                return "H4"
            if all(mol.order(p_idx, x) == 1 for x in mol.graph[p_idx]):
                return "H2"
            return "HS"
        return "H2"
    return "H2"


def clogp(mol: RMol) -> float:
    total = 0.0
    for idx, atom in enumerate(mol.atoms):
        el = atom.element
        if el == "C":
            cls = _carbon_class(mol, idx)
        elif el == "N":
            cls = _nitrogen_class(mol, idx)
        elif el == "O":
            cls = _oxygen_class(mol, idx)
        elif el in ("F", "Cl", "Br", "I"):
            cls = el if atom.charge == 0 else "Hal"
        elif el == "S":
            cls = "S3" if atom.aromatic and atom.charge == 0 else ("S1" if atom.charge == 0 else "S2")
        elif el == "P":
            cls = "P"
        elif el in ("Na", "K", "Li", "Ca", "Mg", "Fe", "Zn", "Al"):
            cls = "Me1"
        else:
            cls = "Me2"
        total += _CRIPPEN[cls]
        if atom.h_total:
            total += atom.h_total * _CRIPPEN[_h_class(mol, idx)]
    return total


def describe(smiles: str) -> dict:
    """All fixture descriptors for one SMILES string."""
    mol = parse(smiles)
    n, n_ar, n_ph = ring_summary(mol)
    return {
        "mw": weight(mol),
        "fsp3": fsp3(mol),
        "n_rings": n,
        "n_aromatic_rings": n_ar,
        "n_phenyl_rings": n_ph,
        "n_rotatable": rotatable(mol),
        "hbd": donors(mol),
        "net_charge": net_charge(mol),
        "tpsa": tpsa(mol),
        "clogp": clogp(mol),
        "element_violation": int(any(a.element not in WHITELIST for a in mol.atoms)),
        "multi_fragment": int(mol.fragments > 1),
        "has_isotope": int(any(a.isotope is not None for a in mol.atoms)),
    }
