"""Worked-example data: two quivers on three vertices with four arrows, their
standard quivers, and the intermediate matrices of the congruence
construction (``*_prime`` walk matrices, kernel matrices, corrections)."""

from __future__ import annotations

from importlib import resources
from pathlib import Path


def path(name: str) -> Path:
    return Path(str(resources.files(__name__).joinpath(name)))
