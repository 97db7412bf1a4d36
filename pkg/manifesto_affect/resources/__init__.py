"""Bundled resource tables (abbreviations, lemmas, unicode map, constants, lexicon excerpts)."""

from __future__ import annotations

from importlib.resources import files
from pathlib import Path


def resource_path(name: str) -> Path:
    """Filesystem path of a bundled resource file."""
    return Path(str(files(__name__) / name))
