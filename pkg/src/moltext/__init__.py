"""moltext: curate SMILES/IUPAC dumps, build instruction datasets, score predictions."""

__version__ = "0.1.0"

from .graph import Atom, Bond, MolecularGraph
from .parser import parse_smiles
from .rings import perceive, perceive_aromaticity, perceive_rings

__all__ = [
    "__version__",
    "Atom",
    "Bond",
    "MolecularGraph",
    "parse_smiles",
    "perceive",
    "perceive_aromaticity",
    "perceive_rings",
    "molecule_from_smiles",
]


def molecule_from_smiles(text: str) -> MolecularGraph:
    """Parse and fully perceive (rings + aromaticity) a SMILES string."""
    return perceive(parse_smiles(text))
