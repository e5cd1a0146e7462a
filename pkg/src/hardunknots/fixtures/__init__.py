"""Frozen diagram fixtures.

Each fixture is a PD file (the format is described in INTERFACE.md) with two extra keys:
``name`` and ``provenance``, a list of lines saying how the diagram was
obtained.  ``tools/derive_fixtures.py`` regenerates them.
"""
from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from ..diagram.core import PlanarDiagram

__all__ = ["names", "load", "load_record", "provenance"]


def names() -> list[str]:
    pkg = resources.files(__name__)
    return sorted(p.name[:-5] for p in pkg.iterdir() if p.name.endswith(".json"))


@lru_cache(maxsize=None)
def _text(name: str) -> str:
    f = resources.files(__name__) / f"{name}.json"
    if not f.is_file():
        raise KeyError(f"no fixture {name!r}; have {', '.join(names())}")
    return f.read_text(encoding="utf-8")


def load_record(name: str) -> dict:
    return json.loads(_text(name))


def load(name: str) -> PlanarDiagram:
    """The fixture as a validated diagram."""
    rec = load_record(name)
    return PlanarDiagram.from_pd(rec["crossings"], rec.get("free_loops", 0))


def provenance(name: str) -> list[str]:
    return list(load_record(name).get("provenance", []))
