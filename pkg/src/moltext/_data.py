"""Access to the versioned plain-text data files.

Files ship inside the package; MOLTEXT_DATA_DIR overrides the directory
for all of them (the one environment variable the toolkit reads).
"""

from __future__ import annotations

import os
from importlib import resources
from pathlib import Path


def read_data_text(filename: str) -> str:
    override = os.environ.get("MOLTEXT_DATA_DIR")
    if override:
        return (Path(override) / filename).read_text(encoding="utf-8")
    return resources.files("moltext.data").joinpath(filename).read_text()
