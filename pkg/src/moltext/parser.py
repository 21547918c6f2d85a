"""SMILES parser producing an annotated molecular graph.

Supports the organic subset, bracket atoms (isotope, charge, explicit H,
chirality, atom class), ring closures (digits and %nn), branches, dot
disconnections, and bond symbols - = # : / \\. Stereo markers are parsed
and retained as annotations but play no further role.

Aromatic (lowercase) input is kekulized right after the structural parse
so that implicit hydrogens and valence checks work from integer bond
orders regardless of input style; ring/aromaticity perception later
re-derives aromatic flags from those orders, which makes the Kekulé and
lowercase encodings of the same molecule land on identical graphs.
"""

from __future__ import annotations

from .elements import (
    AROMATIC_SYMBOLS,
    ORGANIC_SUBSET,
    allowed_valences,
    is_known_element,
)
from .errors import (
    EmptyInput,
    SmilesParseError,
    UnbalancedParenthesis,
    UnclosedRing,
    UnknownElement,
    ValenceViolation,
)
from .graph import Atom, Bond, MolecularGraph

_BOND_ORDERS = {"-": 1, "=": 2, "#": 3}
_TWO_LETTER_BRACKET_AROMATIC = {"se": "Se", "as": "As"}


def parse_smiles(text: str) -> MolecularGraph:
    """Parse a SMILES string into a molecular graph.

    The returned graph has integer Kekulé bond orders, implicit hydrogens
    assigned, and valences verified; rings are not yet perceived.

    Raises:
        EmptyInput, UnknownElement, UnclosedRing, UnbalancedParenthesis,
        ValenceViolation: each carrying the byte offset of the problem.
    """
    if not text or not text.strip():
        raise EmptyInput("empty SMILES input", text, 0)
    if not text.isascii():
        offset = next(i for i, ch in enumerate(text) if ord(ch) > 127)
        raise SmilesParseError("non-ASCII character in SMILES", text, offset)

    parser = _Parser(text)
    graph = parser.run()
    _kekulize(graph, text)
    _assign_implicit_hydrogens(graph, text, parser.bracket_atoms)
    _check_valences(graph, text, parser.atom_offsets)
    graph.fragment_count = len(graph.components())
    return graph


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.pos = 0
        self.graph = MolecularGraph()
        self.prev_atom: int | None = None
        self.branch_stack: list[int] = []
        # ring digit -> (atom index, pending order, pending aromatic, open offset)
        self.open_rings: dict[int, tuple[int, int | None, bool, int]] = {}
        self.pending_order: int | None = None
        self.pending_aromatic = False
        self.pending_stereo: str | None = None
        self.bracket_atoms: set[int] = set()
        self.atom_offsets: list[int] = []

    def run(self) -> MolecularGraph:
        text = self.text
        n = len(text)
        while self.pos < n:
            ch = text[self.pos]
            if ch in "-=#":
                self._require_bond_context(ch)
                self.pending_order = _BOND_ORDERS[ch]
                self.pos += 1
            elif ch == ":":
                self._require_bond_context(ch)
                self.pending_aromatic = True
                self.pos += 1
            elif ch in "/\\":
                self._require_bond_context(ch)
                self.pending_stereo = ch
                self.pos += 1
            elif ch == "(":
                if self.prev_atom is None:
                    raise UnbalancedParenthesis(
                        "branch opened before any atom", text, self.pos
                    )
                self.branch_stack.append(self.prev_atom)
                self.pos += 1
            elif ch == ")":
                if not self.branch_stack:
                    raise UnbalancedParenthesis(
                        "unopened branch closed", text, self.pos
                    )
                if self._bond_pending():
                    raise SmilesParseError("dangling bond before ')'", text, self.pos)
                self.prev_atom = self.branch_stack.pop()
                self.pos += 1
            elif ch == ".":
                if self.branch_stack:
                    raise SmilesParseError(
                        "dot disconnection inside a branch", text, self.pos
                    )
                if self.prev_atom is None or self._bond_pending():
                    raise SmilesParseError("misplaced dot separator", text, self.pos)
                self.prev_atom = None
                self.pos += 1
                if self.pos >= n:
                    raise SmilesParseError("empty fragment after dot", text, self.pos)
            elif ch.isdigit() or ch == "%":
                self._ring_closure()
            elif ch == "[":
                self._bracket_atom()
            elif ch.isalpha() or ch == "*":
                self._organic_atom()
            else:
                raise SmilesParseError(f"unexpected character {ch!r}", text, self.pos)

        if self.branch_stack:
            raise UnbalancedParenthesis("unclosed branch", text, n)
        if self.open_rings:
            digit = min(self.open_rings)
            raise UnclosedRing(
                f"ring closure {digit} never closed", text, self.open_rings[digit][3]
            )
        if self._bond_pending():
            raise SmilesParseError("dangling bond at end of input", text, n)
        return self.graph

    # -- pieces ----------------------------------------------------------

    def _bond_pending(self) -> bool:
        return (
            self.pending_order is not None
            or self.pending_aromatic
            or self.pending_stereo is not None
        )

    def _require_bond_context(self, ch: str) -> None:
        if self.prev_atom is None:
            raise SmilesParseError(f"bond {ch!r} with no preceding atom", self.text, self.pos)
        if self._bond_pending():
            raise SmilesParseError("two bond symbols in a row", self.text, self.pos)

    def _take_pending(self) -> tuple[int | None, bool, str | None]:
        pending = (self.pending_order, self.pending_aromatic, self.pending_stereo)
        self.pending_order = None
        self.pending_aromatic = False
        self.pending_stereo = None
        return pending

    def _attach(self, atom_idx: int, aromatic_atom: bool) -> None:
        prev = self.prev_atom
        if prev is not None:
            order, aromatic, stereo = self._take_pending()
            if not aromatic and order is None:
                aromatic = aromatic_atom and self.graph.atoms[prev].aromatic_input
            self.graph.add_bond(
                Bond(
                    a=prev,
                    b=atom_idx,
                    order=order or 1,
                    aromatic_input=aromatic,
                    stereo=stereo,
                )
            )
        self.prev_atom = atom_idx

    def _ring_closure(self) -> None:
        text = self.text
        start = self.pos
        if self.prev_atom is None:
            raise SmilesParseError("ring closure with no preceding atom", text, start)
        if text[self.pos] == "%":
            if self.pos + 2 >= len(text) or not text[self.pos + 1 : self.pos + 3].isdigit():
                raise SmilesParseError("%% ring closure needs two digits", text, start)
            digit = int(text[self.pos + 1 : self.pos + 3])
            self.pos += 3
        else:
            digit = int(text[self.pos])
            self.pos += 1

        order, aromatic, _stereo = self._take_pending()
        if digit in self.open_rings:
            other, open_order, open_aromatic, _off = self.open_rings.pop(digit)
            if other == self.prev_atom:
                raise SmilesParseError("ring bond to the same atom", text, start)
            if order is not None and open_order is not None and order != open_order:
                raise SmilesParseError(
                    f"conflicting ring-closure bond orders for {digit}", text, start
                )
            final_order = order or open_order
            final_aromatic = aromatic or open_aromatic
            if final_order is None and not final_aromatic:
                a, b = self.graph.atoms[other], self.graph.atoms[self.prev_atom]
                final_aromatic = a.aromatic_input and b.aromatic_input
            self.graph.add_bond(
                Bond(
                    a=other,
                    b=self.prev_atom,
                    order=final_order or 1,
                    aromatic_input=final_aromatic,
                )
            )
        else:
            self.open_rings[digit] = (self.prev_atom, order, aromatic, start)

    def _organic_atom(self) -> None:
        text = self.text
        start = self.pos
        ch = text[start]
        symbol = ch
        if ch.isupper() and start + 1 < len(text):
            two = text[start : start + 2]
            if two in ("Cl", "Br"):
                symbol = two
        aromatic = symbol.islower()
        if aromatic:
            if symbol not in AROMATIC_SYMBOLS:
                raise UnknownElement(f"unknown aromatic symbol {symbol!r}", text, start)
            element = symbol.upper()
        else:
            element = symbol
            if element not in ORGANIC_SUBSET:
                raise UnknownElement(
                    f"{element!r} needs brackets or is not an element", text, start
                )
        self.pos += len(symbol)
        idx = self.graph.add_atom(Atom(element=element, aromatic_input=aromatic))
        self.atom_offsets.append(start)
        self._attach(idx, aromatic)

    def _bracket_atom(self) -> None:
        text = self.text
        start = self.pos
        end = text.find("]", start)
        if end == -1:
            raise SmilesParseError("unterminated bracket atom", text, start)
        body = text[start + 1 : end]
        if not body:
            raise SmilesParseError("empty bracket atom", text, start)
        pos = 0

        isotope = None
        while pos < len(body) and body[pos].isdigit():
            pos += 1
        if pos:
            isotope = int(body[:pos])

        if pos >= len(body):
            raise UnknownElement("bracket atom lacks an element", text, start + 1 + pos)
        aromatic = False
        two = body[pos : pos + 2]
        one = body[pos]
        if two in _TWO_LETTER_BRACKET_AROMATIC:
            element, aromatic = _TWO_LETTER_BRACKET_AROMATIC[two], True
            pos += 2
        elif two.isalpha() and two[0].isupper() and two[1].islower() and is_known_element(two):
            element = two
            pos += 2
        elif one.isupper():
            element = one
            if not is_known_element(element):
                raise UnknownElement(f"unknown element {element!r}", text, start + 1 + pos)
            pos += 1
        elif one in AROMATIC_SYMBOLS:
            element, aromatic = one.upper(), True
            pos += 1
        else:
            raise UnknownElement(f"unknown element {one!r}", text, start + 1 + pos)

        chirality = None
        if pos < len(body) and body[pos] == "@":
            pos += 1
            if pos < len(body) and body[pos] == "@":
                chirality = "@@"
                pos += 1
            else:
                chirality = "@"

        explicit_h = 0
        if pos < len(body) and body[pos] == "H":
            pos += 1
            digits = ""
            while pos < len(body) and body[pos].isdigit():
                digits += body[pos]
                pos += 1
            explicit_h = int(digits) if digits else 1

        charge = 0
        if pos < len(body) and body[pos] in "+-":
            sign = 1 if body[pos] == "+" else -1
            count = 0
            while pos < len(body) and body[pos] in "+-":
                if (body[pos] == "+") != (sign > 0):
                    raise SmilesParseError("mixed charge signs", text, start + 1 + pos)
                count += 1
                pos += 1
            digits = ""
            while pos < len(body) and body[pos].isdigit():
                digits += body[pos]
                pos += 1
            charge = sign * (int(digits) if digits else count)

        if pos < len(body) and body[pos] == ":":
            pos += 1
            if pos >= len(body) or not body[pos].isdigit():
                raise SmilesParseError("atom class needs digits", text, start + 1 + pos)
            while pos < len(body) and body[pos].isdigit():
                pos += 1

        if pos != len(body):
            raise SmilesParseError(
                f"unexpected {body[pos]!r} in bracket atom", text, start + 1 + pos
            )

        self.pos = end + 1
        idx = self.graph.add_atom(
            Atom(
                element=element,
                charge=charge,
                isotope=isotope,
                explicit_h=explicit_h,
                aromatic_input=aromatic,
                chirality=chirality,
            )
        )
        self.atom_offsets.append(start)
        self.bracket_atoms.add(idx)
        self._attach(idx, aromatic)


# -- post-parse passes ----------------------------------------------------


def _cycle_bonds(graph: MolecularGraph) -> set[int]:
    """Bond indices that lie on some cycle (non-bridge edges)."""
    n = len(graph.atoms)
    visited = [False] * n
    disc = [0] * n
    low = [0] * n
    bridges: set[int] = set()
    timer = 0
    for root in range(n):
        if visited[root]:
            continue
        # Iterative DFS with parent-edge tracking.
        stack: list[tuple[int, int, int]] = [(root, -1, 0)]
        while stack:
            node, parent_bond, state = stack.pop()
            if state == 0:
                if visited[node]:
                    continue
                visited[node] = True
                disc[node] = low[node] = timer
                timer += 1
                stack.append((node, parent_bond, 1))
                for nbr, bidx in graph.neighbors(node):
                    if bidx == parent_bond:
                        continue
                    if visited[nbr]:
                        low[node] = min(low[node], disc[nbr])
                    else:
                        stack.append((nbr, bidx, 0))
            else:
                for nbr, bidx in graph.neighbors(node):
                    if bidx != parent_bond and disc[nbr] > disc[node]:
                        low[node] = min(low[node], low[nbr])
                        if low[nbr] > disc[node]:
                            bridges.add(bidx)
    return {i for i in range(len(graph.bonds)) if i not in bridges}


def _aromatic_target(atom: Atom, sigma: int) -> int | None:
    """Smallest allowed valence at or above the current sigma count."""
    allowed = allowed_valences(atom.element, atom.charge)
    if not allowed:
        return None
    for v in allowed:
        if v >= sigma:
            return v
    return None


def _kekulize(graph: MolecularGraph, text: str) -> None:
    """Assign double bonds within lowercase-aromatic input systems.

    Every aromatic-input atom whose sigma valence falls short of its
    target valence must receive exactly one double bond along an in-cycle
    aromatic bond; a backtracking perfect matching finds the assignment.
    """
    candidates = []
    for idx, atom in enumerate(graph.atoms):
        if not atom.aromatic_input:
            continue
        sigma = graph.bond_order_sum(idx) + atom.explicit_h
        target = _aromatic_target(atom, sigma)
        if target is not None and sigma < target:
            candidates.append(idx)
    if not candidates:
        return

    in_cycle = _cycle_bonds(graph)
    needs = set(candidates)
    adjacency: dict[int, list[tuple[int, int]]] = {idx: [] for idx in candidates}
    for idx in candidates:
        for nbr, bidx in graph.neighbors(idx):
            if nbr in needs and bidx in in_cycle and graph.bonds[bidx].aromatic_input:
                adjacency[idx].append((nbr, bidx))

    matched: dict[int, int] = {}

    def backtrack(remaining: list[int]) -> bool:
        while remaining and remaining[-1] in matched:
            remaining = remaining[:-1]
        if not remaining:
            return True
        atom = remaining[-1]
        for nbr, bidx in adjacency[atom]:
            if nbr in matched:
                continue
            matched[atom] = bidx
            matched[nbr] = bidx
            if backtrack(remaining[:-1]):
                return True
            del matched[atom]
            del matched[nbr]
        return False

    ordered = sorted(candidates, key=lambda i: len(adjacency[i]), reverse=True)
    if not backtrack(ordered):
        raise ValenceViolation(
            "aromatic system cannot be kekulized", text, 0
        )
    for bidx in set(matched.values()):
        graph.bonds[bidx].order = 2


def _assign_implicit_hydrogens(
    graph: MolecularGraph, text: str, bracket_atoms: set[int]
) -> None:
    for idx, atom in enumerate(graph.atoms):
        if idx in bracket_atoms:
            atom.implicit_h = 0
            continue
        bond_sum = graph.bond_order_sum(idx)
        allowed = allowed_valences(atom.element, atom.charge)
        if allowed is None:
            atom.implicit_h = 0
            continue
        target = next((v for v in allowed if v >= bond_sum), None)
        if target is None:
            raise ValenceViolation(
                f"{atom.element} exceeds its maximum valence", text, 0
            )
        atom.implicit_h = target - bond_sum


def _check_valences(
    graph: MolecularGraph, text: str, atom_offsets: list[int]
) -> None:
    for idx, atom in enumerate(graph.atoms):
        allowed = allowed_valences(atom.element, atom.charge)
        if allowed is None:
            continue
        total = graph.bond_order_sum(idx) + atom.implicit_h + atom.explicit_h
        if total not in allowed:
            raise ValenceViolation(
                f"{atom.element}{atom.charge:+d} has valence {total}, "
                f"allowed {sorted(allowed)}",
                text,
                atom_offsets[idx],
            )
