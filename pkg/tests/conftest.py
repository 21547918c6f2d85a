from __future__ import annotations

from fractions import Fraction
from pathlib import Path

import pytest

FIXTURES = Path(__file__).parent / "fixtures"


def load_descriptor_fixture() -> list[dict]:
    rows = []
    header = None
    with open(FIXTURES / "descriptor_oracle_1000.tsv", encoding="utf-8") as fh:
        for line in fh:
            if line.startswith("#"):
                continue
            if header is None:
                header = line.rstrip("\n").split("\t")
                continue
            rows.append(dict(zip(header, line.rstrip("\n").split("\t"))))
    return rows


def fixture_fsp3(text: str) -> Fraction:
    if "/" in text or text.isdigit():
        return Fraction(text)
    return Fraction(float(text)).limit_denominator(10**9)


@pytest.fixture(scope="session")
def descriptor_rows() -> list[dict]:
    return load_descriptor_fixture()


@pytest.fixture(scope="session")
def fixture_graphs(descriptor_rows):
    from moltext import molecule_from_smiles

    return [(row, molecule_from_smiles(row["smiles"])) for row in descriptor_rows]
