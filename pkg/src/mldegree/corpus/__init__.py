"""Named inputs with their known invariants, shipped as JSON data files."""

from __future__ import annotations

import json
from importlib import resources

NAMES = ("plane_curves", "gordan_noether", "homaloidal_family", "arrangements")


def load(name: str) -> list[dict]:
    """Entries of corpus file ``name`` (one of NAMES)."""
    if name not in NAMES:
        raise KeyError(f"unknown corpus {name!r}; available: {', '.join(NAMES)}")
    text = resources.files(__package__).joinpath(f"{name}.json").read_text(encoding="utf-8")
    return json.loads(text)["entries"]
