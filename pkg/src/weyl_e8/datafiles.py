"""Shipped data files and their sha256 manifest."""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

DATA_DIR = Path(__file__).with_name("data")
MANIFEST = "MANIFEST.json"


class ChecksumError(RuntimeError):
    pass


def sha256_bytes(data: bytes) -> str:
    return hashlib.sha256(data).hexdigest()


def read_manifest() -> dict[str, str]:
    return json.loads((DATA_DIR / MANIFEST).read_text())


def read_verified(name: str) -> str:
    """Text of a shipped data file, after checking it against the manifest."""
    data = (DATA_DIR / name).read_bytes()
    expected = read_manifest().get(name)
    if expected is None:
        raise ChecksumError(f"{name} is not listed in {MANIFEST}")
    if sha256_bytes(data) != expected:
        raise ChecksumError(f"checksum mismatch for {name}")
    return data.decode("utf-8")


def write_manifest() -> dict[str, str]:
    """Recompute the manifest over every file in the data directory (maintenance helper)."""
    out = {p.name: sha256_bytes(p.read_bytes())
           for p in sorted(DATA_DIR.iterdir()) if p.is_file() and p.name != MANIFEST}
    (DATA_DIR / MANIFEST).write_text(json.dumps(out, indent=2, sort_keys=True) + "\n")
    return out
