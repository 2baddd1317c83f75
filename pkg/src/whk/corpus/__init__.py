"""Bundled definition files and the exit codes each command is expected to give on them."""

from __future__ import annotations

import json
from importlib import resources
from pathlib import Path

MANIFEST = "manifest.json"


def _root() -> Path:
    return Path(str(resources.files(__name__)))


def files() -> list:
    """Names of the bundled definition files, sorted."""
    return sorted(p.name for p in _root().glob("*.json") if p.name != MANIFEST)


def path(name: str) -> Path:
    p = _root() / name
    if not p.is_file():
        raise FileNotFoundError(f"no corpus file {name!r}")
    return p


def manifest() -> dict:
    """{file: {command: expected exit code}}."""
    return json.loads((_root() / MANIFEST).read_text())
