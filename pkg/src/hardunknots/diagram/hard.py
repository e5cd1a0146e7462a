"""Enumeration of hard unknot diagrams of the form ``N(A - B)``."""
from __future__ import annotations

from itertools import combinations
from typing import Iterator, NamedTuple

from ..cfrac import CFrac, eval_cf, is_canonical, is_convergent_pair
from .build import sum_diagram
from .core import PlanarDiagram
from .moves import is_hard

__all__ = ["HardSum", "positive_canonical_cfs", "enumerate_hard_sums"]


class HardSum(NamedTuple):
    a: CFrac
    b: CFrac
    flip_b: bool
    mirrored: bool
    diagram: PlanarDiagram

    def label(self) -> str:
        s = f"N({self.a} - {self.b}{'^v' if self.flip_b else ''})"
        return f"mirror {s}" if self.mirrored else s


def _compositions(n: int) -> Iterator[list[int]]:
    for k in range(n):
        for cuts in combinations(range(1, n), k):
            bounds = (0,) + cuts + (n,)
            yield [bounds[i + 1] - bounds[i] for i in range(k + 1)]


def positive_canonical_cfs(total: int) -> Iterator[CFrac]:
    """Canonical all-positive continued fractions whose terms sum to ``total``,
    in increasing length then lexicographic order."""
    for terms in _compositions(total):
        if is_canonical(terms):
            yield CFrac(terms)


def enumerate_hard_sums(max_crossings: int, mirrors: bool = False) -> list[HardSum]:
    """Every hard ``N(A - B)`` with A and B positive canonical, ``A, B`` a
    convergent pair, and at most ``max_crossings`` crossings in total.

    Both orientations of B (plain and vertically flipped) are tried.  Results
    are ordered by crossing count, then A, then B.  With ``mirrors`` each hit
    is followed by its mirror image.
    """
    if max_crossings < 1:
        raise ValueError("max_crossings must be at least 1")
    out: list[HardSum] = []
    for n in range(2, max_crossings + 1):
        for na in range(1, n):
            for a in positive_canonical_cfs(na):
                fa = eval_cf(a)
                for b in positive_canonical_cfs(n - na):
                    if not is_convergent_pair(fa, eval_cf(b)):
                        continue
                    neg_b = [-x for x in b.terms]
                    for flip in (False, True):
                        d = sum_diagram(a.terms, neg_b, flip_b=flip)
                        if is_hard(d):
                            out.append(HardSum(a, b, flip, False, d))
                            if mirrors:
                                out.append(HardSum(a, b, flip, True, d.mirror()))
    return out
