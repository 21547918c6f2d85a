"""Element data: symbols, masses, standard valences, organic subset.

Masses come from the versioned data file; valences implement the fixed
standard-valence model (C4, N3, O2, S2/4/6, halogens 1, H1) with a
charge adjustment that depends on which side of the periodic table the
element sits on.
"""

from __future__ import annotations

from ._data import read_data_text

__all__ = [
    "ATOMIC_MASSES",
    "ORGANIC_SUBSET",
    "AROMATIC_SYMBOLS",
    "TWO_LETTER_ORGANIC",
    "ACCEPTED_ELEMENTS",
    "STANDARD_VALENCES",
    "allowed_valences",
    "is_known_element",
]


def _load_masses() -> dict[str, float]:
    masses: dict[str, float] = {}
    text = read_data_text("atomic_masses.txt")
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        symbol, mass = line.split("\t")
        masses[symbol] = float(mass)
    return masses


ATOMIC_MASSES: dict[str, float] = _load_masses()

# Atoms writable without brackets.
ORGANIC_SUBSET = {"B", "C", "N", "O", "P", "S", "F", "Cl", "Br", "I"}
TWO_LETTER_ORGANIC = {"Cl", "Br"}

# Lowercase aromatic input symbols the parser accepts.
AROMATIC_SYMBOLS = {"b", "c", "n", "o", "p", "s"}

# Element whitelist for accepted molecules (filtering, not parsing).
ACCEPTED_ELEMENTS = frozenset({"H", "C", "N", "O", "S", "F", "Cl", "Br"})

# Allowed total valences (bond order sum + hydrogens) per neutral element.
STANDARD_VALENCES: dict[str, tuple[int, ...]] = {
    "H": (1,),
    "B": (3,),
    "C": (4,),
    "N": (3,),
    "O": (2,),
    "P": (3, 5),
    "S": (2, 4, 6),
    "F": (1,),
    "Cl": (1,),
    "Br": (1,),
    "I": (1,),
}

# Elements whose valence grows with positive charge (lone-pair binders).
_LONE_PAIR_BINDERS = {"N", "O", "P", "S", "F", "Cl", "Br", "I"}


def allowed_valences(element: str, charge: int) -> tuple[int, ...] | None:
    """Allowed valences for an element/charge pair, or None if unmodeled.

    N+ binds through its lone pair (valence 4); C+/C- both drop to 3.
    Elements outside the standard table are not valence-checked.
    """
    base = STANDARD_VALENCES.get(element)
    if base is None:
        return None
    if charge == 0:
        return base
    if element in _LONE_PAIR_BINDERS:
        return tuple(v + charge for v in base if v + charge >= 0)
    # B, C and other left-side elements lose a bonding slot either way.
    return tuple(v - abs(charge) for v in base if v - abs(charge) >= 0)


def is_known_element(symbol: str) -> bool:
    return symbol in ATOMIC_MASSES
