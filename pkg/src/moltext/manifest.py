"""Reproducibility manifests: checksums, parameters, tool version.

Every emitted artifact gets a sibling ``<artifact>.manifest.json``
recording the inputs (by content hash), the effective parameters, and
the tool version. Manifests carry no timestamps so that re-running a
command reproduces the manifest byte for byte along with the artifact.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

from . import __version__

__all__ = ["sha256_file", "write_manifest", "manifest_path", "read_manifest"]


def sha256_file(path) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 20), b""):
            digest.update(chunk)
    return digest.hexdigest()


def manifest_path(artifact_path) -> Path:
    return Path(str(artifact_path) + ".manifest.json")


def write_manifest(artifact_path, command: str, params: dict, inputs: dict) -> Path:
    """Write the manifest for an artifact; `inputs` maps label -> file path."""
    payload = {
        "tool": "moltext",
        "version": __version__,
        "command": command,
        "params": params,
        "inputs": {
            label: {"path": str(p), "sha256": sha256_file(p)}
            for label, p in inputs.items()
        },
    }
    path = manifest_path(artifact_path)
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(payload, fh, indent=2, sort_keys=True)
        fh.write("\n")
    return path


def read_manifest(artifact_path) -> dict:
    with open(manifest_path(artifact_path), encoding="utf-8") as fh:
        return json.load(fh)
