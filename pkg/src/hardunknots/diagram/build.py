"""Tangle diagrams with four boundary endpoints, and their closures.

Endpoints are ports ``NW=-1, NE=-2, SW=-3, SE=-4``; every other port is a
dart of a crossing.  A tangle diagram records the partner of every dart and
of every endpoint, the crossing signs under the tangle shading (left outer
region shaded) and any crossingless loops.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from ..cfrac import CFrac, Fraction, expand_cf
from ..tangle import (
    CFTangle, FractionTangle, HFlip, InfinityTangle, IntegerTangle, Invert, Mirror,
    Product, Rotate, Sum, TangleExpr, VFlip, parse_tangle,
)
from .core import DiagramError, PlanarDiagram

__all__ = [
    "TangleDiagram", "NW", "NE", "SW", "SE", "ENDPOINT_NAMES",
    "integer_tangle", "vertical_tangle", "zero_tangle", "infinity_tangle",
    "build_tangle_diagram", "build_expr", "closure", "sum_diagram", "vflip", "hflip",
    "rot", "mirror", "tangle_sum", "tangle_product",
]

NW, NE, SW, SE = -1, -2, -3, -4
ENDPOINT_NAMES = {NW: "NW", NE: "NE", SW: "SW", SE: "SE"}
_ENDS = (NW, NE, SW, SE)


@dataclass
class _Ports:
    """Mutable port graph used while gluing pieces together."""

    partner: dict = field(default_factory=dict)
    loops: int = 0

    def link(self, x, y):
        self.partner[x] = y
        self.partner[y] = x

    def glue(self, a, b):
        """Identify ports a and b (both then disappear)."""
        x = self.partner.pop(a)
        y = self.partner.pop(b)
        if x == b:
            self.loops += 1
            return
        self.partner[x] = y
        self.partner[y] = x


@dataclass(frozen=True)
class TangleDiagram:
    """A diagram in a disk with endpoints NW, NE, SW, SE.

    ``adj[d]`` is a dart or an endpoint code; ``ends[i]`` is the partner of
    endpoint ``-(i+1)``.
    """

    adj: tuple
    ends: tuple
    signs: tuple
    free_loops: int = 0

    @property
    def n_crossings(self) -> int:
        return len(self.adj) // 4

    def partner(self, port: int) -> int:
        return self.ends[-port - 1] if port < 0 else self.adj[port]

    def _ports(self, tag, offset=0) -> _Ports:
        P = _Ports(loops=self.free_loops)
        for d, e in enumerate(self.adj):
            P.partner[d + offset] = (tag, e) if e < 0 else e + offset
        for i, e in enumerate(self.ends):
            P.partner[(tag, -(i + 1))] = (tag, e) if e < 0 else e + offset
        return P

    def endpoint_strand(self, end: int) -> list:
        """Ports met walking in from an endpoint until the strand leaves."""
        out = []
        p = self.partner(end)
        while p >= 0:
            out.append(p)
            p = self.adj[p ^ 2]
        out.append(p)
        return out

    def __str__(self):
        return f"TangleDiagram({self.n_crossings} crossings)"


def _finish(P: _Ports, outer: dict, n: int, signs) -> TangleDiagram:
    """Convert a port graph over darts 0..4n-1 and outer endpoint tags."""
    inv = {v: k for k, v in outer.items()}

    def conv(p):
        return inv[p] if not isinstance(p, int) else p

    adj = [conv(P.partner[d]) for d in range(4 * n)]
    ends = tuple(conv(P.partner[outer[e]]) for e in _ENDS)
    return TangleDiagram(tuple(adj), ends, tuple(signs), P.loops)


def _crossing(slots: dict, sign: int) -> TangleDiagram:
    """One crossing; slots maps slot -> endpoint."""
    adj = [slots[s] for s in range(4)]
    ends = [0] * 4
    for s, e in slots.items():
        ends[-e - 1] = s
    return TangleDiagram(tuple(adj), tuple(ends), (sign,), 0)


# [+1]: the NW-SE strand is over, the NE-SW strand under (slots 0, 2)
_PLUS_ONE = _crossing({0: NE, 1: NW, 2: SW, 3: SE}, 1)


def zero_tangle() -> TangleDiagram:
    """``[0]``: two horizontal arcs NW-NE and SW-SE."""
    return TangleDiagram((), (NE, NW, SE, SW), (), 0)


def infinity_tangle() -> TangleDiagram:
    """``[inf]``: two vertical arcs NW-SW and NE-SE."""
    return TangleDiagram((), (SW, SE, NW, NE), (), 0)


def _map_endpoints(t: TangleDiagram, m: dict) -> TangleDiagram:
    """Rename endpoints (m: old -> new) keeping darts."""
    adj = tuple(m[e] if e < 0 else e for e in t.adj)
    ends = [0] * 4
    for old in _ENDS:
        p = t.ends[-old - 1]
        ends[-m[old] - 1] = m[p] if p < 0 else p
    return TangleDiagram(adj, tuple(ends), t.signs, t.free_loops)


def _map_slots(t: TangleDiagram, f) -> TangleDiagram:
    adj = [0] * len(t.adj)
    for d, e in enumerate(t.adj):
        adj[f(d)] = e if e < 0 else f(e)
    ends = tuple(e if e < 0 else f(e) for e in t.ends)
    return TangleDiagram(tuple(adj), ends, t.signs, t.free_loops)


def mirror(t: TangleDiagram) -> TangleDiagram:
    """``-T``: switch every crossing."""
    m = _map_slots(t, lambda d: (d & ~3) | ((d + 1) & 3))
    return TangleDiagram(m.adj, m.ends, tuple(-s for s in t.signs), t.free_loops)


def rot(t: TangleDiagram) -> TangleDiagram:
    """Rotate a quarter turn counterclockwise; crossing types all change."""
    m = _map_endpoints(t, {NE: NW, NW: SW, SW: SE, SE: NE})
    return TangleDiagram(m.adj, m.ends, tuple(-s for s in t.signs), t.free_loops)


def _flip(t: TangleDiagram, m: dict) -> TangleDiagram:
    # turning the disk over reverses every rotation and swaps over/under
    t2 = _map_slots(t, lambda d: d ^ 1)
    return _map_endpoints(t2, m)


def vflip(t: TangleDiagram) -> TangleDiagram:
    """Half turn about the vertical axis: NW<->NE, SW<->SE."""
    return _flip(t, {NW: NE, NE: NW, SW: SE, SE: SW})


def hflip(t: TangleDiagram) -> TangleDiagram:
    """Half turn about the horizontal axis: NW<->SW, NE<->SE."""
    return _flip(t, {NW: SW, SW: NW, NE: SE, SE: NE})


def _combine(t: TangleDiagram, s: TangleDiagram, glue_pairs, outer_from):
    off = 4 * t.n_crossings
    P = t._ports("T")
    Q = s._ports("S", off)
    P.partner.update(Q.partner)
    P.loops += Q.loops
    for a, b in glue_pairs:
        P.glue(("T", a), ("S", b))
    outer = {e: (tag, src) for e, (tag, src) in outer_from.items()}
    return _finish(P, outer, t.n_crossings + s.n_crossings, t.signs + s.signs)


def tangle_sum(t: TangleDiagram, s: TangleDiagram) -> TangleDiagram:
    """``T + S``: S to the right of T."""
    return _combine(t, s, [(NE, NW), (SE, SW)],
                    {NW: ("T", NW), SW: ("T", SW), NE: ("S", NE), SE: ("S", SE)})


def tangle_product(t: TangleDiagram, s: TangleDiagram) -> TangleDiagram:
    """``T * S``: S below T."""
    return _combine(t, s, [(SW, NW), (SE, NE)],
                    {NW: ("T", NW), NE: ("T", NE), SW: ("S", SW), SE: ("S", SE)})


def integer_tangle(n: int) -> TangleDiagram:
    """``[n]``: |n| horizontal twists."""
    unit = _PLUS_ONE if n > 0 else mirror(_PLUS_ONE)
    t = zero_tangle()
    for _ in range(abs(n)):
        t = tangle_sum(t, unit)
    return t


def vertical_tangle(n: int) -> TangleDiagram:
    """``1/[n]``: |n| vertical twists."""
    unit = mirror(rot(_PLUS_ONE if n > 0 else mirror(_PLUS_ONE)))
    t = infinity_tangle()
    for _ in range(abs(n)):
        t = tangle_product(t, unit)
    return t


def build_tangle_diagram(cf) -> TangleDiagram:
    """Standard form of ``[a1, ..., an]``: twists to the right and bottom.

    The innermost term is a horizontal twist for odd ``n`` and a vertical
    twist for even ``n``; then terms alternate, ``a_k`` being added on the
    right (odd k) or multiplied in as ``1/[a_k]`` at the bottom (even k).
    """
    terms = CFrac(cf).terms
    n = len(terms)
    t = integer_tangle(terms[-1]) if n % 2 else vertical_tangle(terms[-1])
    for k in range(n - 1, 0, -1):
        a = terms[k - 1]
        if k % 2:
            t = tangle_sum(t, integer_tangle(a))
        else:
            t = tangle_product(t, vertical_tangle(a))
    return t


def build_expr(expr: TangleExpr | str) -> TangleDiagram:
    """Diagram of a tangle expression, built node by node."""
    if isinstance(expr, str):
        expr = parse_tangle(expr)
    if isinstance(expr, IntegerTangle):
        return integer_tangle(expr.n)
    if isinstance(expr, InfinityTangle):
        return infinity_tangle()
    if isinstance(expr, CFTangle):
        return build_tangle_diagram(expr.cf)
    if isinstance(expr, FractionTangle):
        if expr.value.is_infinite:
            return infinity_tangle()
        return build_tangle_diagram(expand_cf(expr.value))
    if isinstance(expr, Mirror):
        return mirror(build_expr(expr.t))
    if isinstance(expr, Rotate):
        return rot(build_expr(expr.t))
    if isinstance(expr, Invert):
        return mirror(rot(build_expr(expr.t)))
    if isinstance(expr, HFlip):
        return hflip(build_expr(expr.t))
    if isinstance(expr, VFlip):
        return vflip(build_expr(expr.t))
    if isinstance(expr, Sum):
        return tangle_sum(build_expr(expr.left), build_expr(expr.right))
    if isinstance(expr, Product):
        return tangle_product(build_expr(expr.left), build_expr(expr.right))
    raise TypeError(f"not a tangle expression: {expr!r}")


def closure(t: TangleDiagram, mode: str = "numerator") -> PlanarDiagram:
    """Numerator (NW-NE, SW-SE) or denominator (NW-SW, NE-SE) closure."""
    if mode == "numerator":
        pairs = [(NW, NE), (SW, SE)]
    elif mode == "denominator":
        pairs = [(NW, SW), (NE, SE)]
    else:
        raise ValueError(f"unknown closure mode {mode!r}")
    P = t._ports("T")
    for a, b in pairs:
        P.glue(("T", a), ("T", b))
    adj = [P.partner[d] for d in range(4 * t.n_crossings)]
    if any(not isinstance(e, int) for e in adj):
        raise DiagramError("closure left a dangling endpoint")
    shade = t.signs[0] > 0 if t.signs else True
    d = PlanarDiagram(adj, P.loops, shade)
    if d.n_crossings and list(t.signs) != d.signs():
        raise DiagramError("closure signs disagree with the tangle shading")
    if mode == "numerator" and t.ends[-SW - 1] >= 0 and t.ends[-SE - 1] >= 0:
        # the bottom closure arc runs from the dart at SW to the dart at SE
        d.meta["bottom_arc"] = t.ends[-SW - 1]
        d.meta["top_arc"] = t.ends[-NW - 1] if t.ends[-NW - 1] >= 0 else None
    return d


def as_tangle_diagram(x) -> TangleDiagram:
    if isinstance(x, TangleDiagram):
        return x
    if isinstance(x, (TangleExpr, str)):
        return build_expr(x)
    return build_tangle_diagram(x)


def sum_diagram(a, b, flip_b: bool = False) -> PlanarDiagram:
    """``N(A + B)`` with B replaced by its vertical flip when ``flip_b``."""
    ta = as_tangle_diagram(a)
    tb = as_tangle_diagram(b)
    if flip_b:
        tb = vflip(tb)
    d = closure(tangle_sum(ta, tb), "numerator")
    na = ta.n_crossings
    d.meta["blocks"] = (list(range(na)), list(range(na, na + tb.n_crossings)))
    if ta.ends[-NE - 1] >= 0 and ta.ends[-SE - 1] >= 0:
        # the two edges joining A to B: top (A.NE-B.NW) and bottom (A.SE-B.SW)
        d.meta["top_junction"] = ta.ends[-NE - 1]
        d.meta["bottom_junction"] = ta.ends[-SE - 1]
    return d
