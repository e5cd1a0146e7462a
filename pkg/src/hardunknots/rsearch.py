"""Bounded Reidemeister search: unknot certificates and the Top(K) measure.

States are diagrams with at most ``cap`` crossings.  A state is expanded by
every move that does not add crossings; inside the cap it also gets every
kink and every poke.  The frontier is popped in order of crossing count, ties first
in first out, which reaches crossing-free states quickly without changing
what a finished search proves: a cap is declared hopeless only after every
reachable state has been expanded.

Top(K) comes from iterative deepening on the cap: the least cap at which a
crossing-free state is reachable.  Recalcitrance is Top(K) over the
starting crossing count.
"""
from __future__ import annotations

import heapq
import json
from dataclasses import dataclass, field
from typing import Callable, Optional

from .cfrac import Fraction, normalize
from .diagram.core import PlanarDiagram
from .diagram.moves import apply_move
from .kernel import expand, symmetric_code

__all__ = [
    "SearchOutcome", "RecalcitranceReport", "SearchError", "unknot_search",
    "search_at_cap", "recalcitrance", "recalcitrance_family", "replay",
    "DEFAULT_BUDGET",
]

DEFAULT_BUDGET = 10_000_000

FOUND, EXHAUSTED, CAP_HIT = "found", "exhausted", "cap_hit"


class SearchError(ValueError):
    pass


@dataclass
class SearchOutcome:
    """Result of :func:`unknot_search`.

    ``top`` is the least cap that succeeded.  ``certified`` is false when a
    smaller cap ran out of budget instead of being exhausted, so ``top`` is
    then only an upper bound.
    """

    status: str
    top: Optional[int]
    path: list = field(default_factory=list)
    states_visited: int = 0
    certified: bool = True
    layers: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "top": self.top,
            "certified": self.certified,
            "states_visited": self.states_visited,
            "path": [list(m) for m in self.path],
            "layers": self.layers,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


@dataclass(frozen=True)
class RecalcitranceReport:
    top: int
    crossings: int
    ratio: Fraction
    certified: bool = True

    def to_dict(self) -> dict:
        return {"top": self.top, "crossings": self.crossings, "ratio": str(self.ratio),
                "certified": self.certified}


def search_at_cap(d: PlanarDiagram, cap: int, budget: int = DEFAULT_BUDGET,
                  progress: Callable[[dict], None] | None = None,
                  progress_every: int = 100_000):
    """One bounded search.  Returns ``(status, path, states_visited)``."""
    n0 = d.n_crossings
    if cap < n0:
        raise SearchError(f"cap {cap} is below the crossing count {n0}")
    start = symmetric_code(d.adj, d.free_loops)
    if n0 == 0:
        return FOUND, [], 1
    # visited maps a state key to (parent key, move) for path recovery
    parent: dict = {start: None}
    heap = [(n0, 0, d.adj, d.free_loops, start)]
    tick = 0
    next_report = progress_every
    while heap:
        n, _, adj, loops, key = heapq.heappop(heap)
        for move, new, nl, k in expand(adj, loops, cap):
            if k in parent:
                continue
            parent[k] = (key, move)
            if len(new) == 0:
                return FOUND, _unwind(parent, k), len(parent)
            tick += 1
            heapq.heappush(heap, (len(new) // 4, tick, tuple(new), nl, k))
        if len(parent) > budget:
            return CAP_HIT, [], len(parent)
        if progress is not None and len(parent) >= next_report:
            next_report += progress_every
            progress({"cap": cap, "states": len(parent), "frontier": len(heap)})
    return EXHAUSTED, [], len(parent)


def _unwind(parent: dict, k) -> list:
    path = []
    while parent[k] is not None:
        k, move = parent[k]
        path.append(move)
    path.reverse()
    return path


def replay(d: PlanarDiagram, path) -> list[PlanarDiagram]:
    """Apply a move list from :func:`unknot_search`; returns every diagram."""
    out = [d]
    for m in path:
        out.append(apply_move(out[-1], tuple(m)))
    return out


def unknot_search(d: PlanarDiagram, cap: int, budget: int = DEFAULT_BUDGET,
                  progress: Callable[[dict], None] | None = None) -> SearchOutcome:
    """Find an unknotting sequence staying within ``cap`` crossings.

    Caps ``C(d), C(d)+1, ..., cap`` are tried in turn; the first that
    succeeds is reported as ``top``.  ``budget`` bounds the states of each
    cap's search.
    """
    n0 = d.n_crossings
    if cap < n0:
        raise SearchError(f"cap {cap} is below the crossing count {n0}")
    total = 0
    certified = True
    layers = []
    for c in range(n0, cap + 1):
        status, path, seen = search_at_cap(d, c, budget, progress)
        total += seen
        layers.append({"cap": c, "status": status, "states": seen})
        if progress is not None:
            progress({"cap": c, "status": status, "states": seen})
        if status == FOUND:
            return SearchOutcome(FOUND, c, path, total, certified, layers)
        if status == CAP_HIT:
            certified = False
    return SearchOutcome(EXHAUSTED if certified else CAP_HIT, None, [], total, certified, layers)


def recalcitrance(d: PlanarDiagram, cap: int, budget: int = DEFAULT_BUDGET,
                  progress=None) -> RecalcitranceReport:
    """``Top(d) / C(d)`` as an exact fraction (1 for a crossingless diagram)."""
    out = unknot_search(d, cap, budget, progress)
    if out.status != FOUND:
        raise SearchError(f"no unknotting sequence within cap {cap} ({out.status})")
    n = d.n_crossings
    ratio = Fraction(1, 1) if n == 0 else normalize(out.top, n)
    return RecalcitranceReport(out.top, n, ratio, out.certified)


def recalcitrance_family(N_moves: int, k: int, C: int, a: int) -> Fraction:
    """``(a N + k) / (2a + C)``, which tends to ``N/2`` as ``a`` grows."""
    for name, v in (("N_moves", N_moves), ("k", k), ("C", C), ("a", a)):
        if int(v) != v or v < 0:
            raise ValueError(f"{name} must be a non-negative integer")
    den = 2 * a + C
    if den == 0:
        raise ZeroDivisionError("2a + C must be positive")
    return normalize(a * N_moves + k, den)
