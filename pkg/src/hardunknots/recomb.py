"""The tangle model of processive recombination.

A substrate ``N(O + I)`` is acted on at the site ``I`` by adding ``n``
twists, giving ``K[n] = N(O + I + [n])``.  As a continued fraction

    K[n] = N([a_r, ..., a_2, a_1 + n + b_1, b_2, ..., b_s])

for ``O = [a_1, ..., a_r]`` and ``I = [b_1, ..., b_s]``.  Terms are always
read outermost first: ``[a_1, a_2, ...] = a_1 + 1/(a_2 + ...)``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .cfrac import CFrac, Fraction, _as_cf, eval_cf, reduce_signs
from .tangle import ClosureReport, classify_closure

__all__ = [
    "TERM_ORDER", "recombine", "stabilize", "is_stabilized", "RecombinationRun",
    "SeriesRow", "run_series",
]

TERM_ORDER = "outermost-first: [a1,a2,...] = a1 + 1/(a2 + ...)"


def recombine(O, I, n: int) -> CFrac:
    """Continued fraction of ``N(O + I + [n])``."""
    a = _as_cf(O).terms
    b = _as_cf(I).terms
    return CFrac(list(reversed(a[1:])) + [a[0] + n + b[0]] + list(b[1:]))


def stabilize(cf) -> CFrac:
    """Rewrite to one sign throughout, keeping the value.

    Negative-valued input is reduced as its negation, then negated back.  A trailing
    ``[..., a, 1]`` is left alone so that the twist slot stays visible.
    """
    t = reduce_signs(_as_cf(cf).terms, merge_tail=False)
    if t is None:
        raise ValueError(f"{_as_cf(cf)} evaluates to inf")
    return CFrac(t)


def is_stabilized(cf) -> bool:
    """All terms of one sign, up to a single zero slot."""
    t = _as_cf(cf).terms
    if sum(1 for a in t if a == 0) > 1:
        return False
    return all(a >= 0 for a in t) or all(a <= 0 for a in t)


@dataclass(frozen=True)
class SeriesRow:
    n: int
    raw: CFrac
    stabilized: CFrac
    fraction: Fraction
    report: ClosureReport

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "raw": str(self.raw),
            "stabilized": str(self.stabilized),
            "fraction": str(self.fraction),
            "knot": self.report.knot_name,
            "unknot": self.report.is_unknot,
        }


@dataclass
class RecombinationRun:
    """Rows for ``n = 0..n_max``.

    ``stable_from`` is the least n from which each stabilized form differs
    from the previous one by one in a single slot, ``twist_slot`` (both None
    when the series never settles within the run).
    """

    O: CFrac
    I: CFrac
    rows: list = field(default_factory=list)
    stable_from: Optional[int] = None
    twist_slot: Optional[int] = None

    @property
    def results(self) -> list:
        return self.rows

    def to_dict(self) -> dict:
        return {
            "term_order": TERM_ORDER,
            "O": str(self.O),
            "I": str(self.I),
            "stable_from": self.stable_from,
            "twist_slot": self.twist_slot,
            "rows": [r.to_dict() for r in self.rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_tsv(self) -> str:
        lines = [f"# term-order: {TERM_ORDER}", "n\traw\tstabilized\tfraction\tknot"]
        for r in self.rows:
            lines.append(f"{r.n}\t{r.raw}\t{r.stabilized}\t{r.fraction}\t{r.report.knot_name}")
        return "\n".join(lines) + "\n"


def _twist_step(prev: Sequence[int], cur: Sequence[int]) -> Optional[int]:
    if len(prev) != len(cur):
        return None
    diff = [i for i, (x, y) in enumerate(zip(prev, cur)) if x != y]
    if len(diff) == 1 and abs(cur[diff[0]] - prev[diff[0]]) == 1:
        return diff[0]
    return None


def run_series(O, I, n_max: int) -> RecombinationRun:
    """Recombine for every ``n`` in ``0..n_max`` and stabilize each result."""
    if n_max < 0:
        raise ValueError("n_max must be non-negative")
    O, I = _as_cf(O), _as_cf(I)
    run = RecombinationRun(O, I)
    for n in range(n_max + 1):
        raw = recombine(O, I, n)
        value = eval_cf(raw)
        if value.is_infinite:
            st = raw
        else:
            st = stabilize(raw)
            if eval_cf(st) != value:
                raise AssertionError(f"stabilizing {raw} changed its value")
        run.rows.append(SeriesRow(n, raw, st, value, classify_closure(value, "numerator")))
    # the last stretch over which consecutive forms differ in one fixed slot
    slot = None
    start = None
    for i in range(len(run.rows) - 1, 0, -1):
        k = _twist_step(run.rows[i - 1].stabilized.terms, run.rows[i].stabilized.terms)
        if k is None or (slot is not None and k != slot):
            break
        slot = k
        start = i - 1
    run.stable_from, run.twist_slot = start, slot
    return run
