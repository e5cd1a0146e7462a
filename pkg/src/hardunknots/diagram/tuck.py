"""The tucking construct: lift an underpass and lay it back under the diagram.

An underpass is a run of edges along one strand whose interior crossings
all have the strand underneath.  Since the run is under everything it meets,
it can be dragged anywhere below the rest of the diagram without changing
the knot.  We lift the run, splice the over-strands across the gap, and lay
a new under-arc between the same two endpoints along a path in the dual
graph.  Each edge the path crosses becomes a crossing with the arc below.
"""
from __future__ import annotations

from typing import Iterator, Sequence

from .core import DiagramError, PlanarDiagram, nxt, opp

__all__ = ["TuckError", "underpass", "lift", "lay_under", "reroutes", "tuck"]


class TuckError(DiagramError):
    pass


def underpass(d: PlanarDiagram, x: int) -> tuple[int, int, list[int]]:
    """Maximal underpass through the edge leaving dart ``x``.

    Returns ``(p, q, crossings)``: the run leaves dart ``p`` and arrives at
    dart ``q``, passing under ``crossings`` (in order) on the way.
    """
    adj = d.adj
    back: list[int] = []
    p = x
    while not p & 1:
        back.append(p >> 2)
        p = adj[opp(p)]
        if len(back) > d.n_crossings:
            raise TuckError("the strand is under everywhere")
    fwd: list[int] = []
    q = adj[x]
    while not q & 1:
        fwd.append(q >> 2)
        q = adj[opp(q)]
        if len(fwd) > d.n_crossings:
            raise TuckError("the strand is under everywhere")
    return p, q, back[::-1] + fwd


def lift(adj: Sequence[int], p: int, q: int, gone: Sequence[int]):
    """Remove the run from ``p`` to ``q`` and the crossings it passes under.

    The over-strands are spliced across the gap.  Returns
    ``(open_adj, p, q, loops)`` in renumbered darts; the two ends are left
    self-paired (``open_adj[p] == p``) and ``loops`` counts over-strands that
    closed up into crossingless circles.
    """
    gone = set(gone)
    if p >> 2 in gone or q >> 2 in gone:
        raise TuckError("the underpass returns over one of its own crossings")
    keep = [c for c in range(len(adj) // 4) if c not in gone]
    nc = {c: i for i, c in enumerate(keep)}

    def f(d):
        return 4 * nc[d >> 2] + (d & 3)

    out = [0] * (4 * len(keep))
    seen = set()
    for c in keep:
        for s in range(4):
            d = 4 * c + s
            e = adj[d]
            if d in (p, q):
                out[f(d)] = f(d)
                continue
            while e >> 2 in gone:
                seen.add(e)
                e = opp(e)
                seen.add(e)
                e = adj[e]
            out[f(d)] = f(e)
    loops = 0
    for c in sorted(gone):
        d0 = 4 * c + 1
        if d0 in seen:
            continue
        loops += 1
        d = d0
        while d not in seen:
            seen.add(d)
            seen.add(opp(d))
            d = adj[opp(d)]
    return out, f(p), f(q), loops


def _open_faces(adj):
    seen = set()
    faces = []
    fo = {}
    for d0 in range(len(adj)):
        if d0 in seen:
            continue
        orbit = []
        d = d0
        while d not in seen:
            seen.add(d)
            orbit.append(d)
            d = nxt(adj[d])
        for e in orbit:
            fo[e] = len(faces)
        faces.append(orbit)
    return faces, fo


def lay_under(adj: Sequence[int], p: int, q: int, crossed: Sequence[int],
              free_loops: int = 0, shade: bool = True) -> PlanarDiagram:
    """Join the open ends ``p`` and ``q`` by an arc passing under ``crossed``.

    Each ``delta`` in ``crossed`` is the dart whose right-hand face holds the
    arc just before it crosses that edge.
    """
    adj = list(adj)
    n = len(adj) // 4
    k = len(crossed)
    if len(set(crossed)) != k or any(adj[a] in crossed for a in crossed):
        raise TuckError("an edge may be crossed only once")
    if any(adj[a] == a for a in crossed):
        raise TuckError("cannot cross the lifted arc itself")
    new = adj + [0] * (4 * k)
    prev = p
    for i, delta in enumerate(crossed):
        z = 4 * (n + i)
        # counterclockwise: arc out, toward delta, arc in, toward its partner
        far = adj[delta]
        new[z + 1], new[delta] = delta, z + 1
        new[z + 3], new[far] = far, z + 3
        new[prev], new[z + 2] = z + 2, prev
        prev = z
    new[prev], new[q] = q, prev
    try:
        return PlanarDiagram(new, free_loops, shade)
    except DiagramError as e:
        raise TuckError(f"path does not embed: {e}") from None


def reroutes(adj: Sequence[int], p: int, q: int, length: int, free_loops: int = 0,
             shade: bool = True) -> Iterator[tuple[tuple, PlanarDiagram]]:
    """Every way of laying the arc from ``p`` to ``q`` across ``length`` edges."""
    faces, fo = _open_faces(adj)
    goal = fo[q]

    def extend(path, face):
        if len(path) == length:
            if face == goal:
                try:
                    yield tuple(path), lay_under(adj, p, q, path, free_loops, shade)
                except TuckError:
                    pass
            return
        for delta in faces[face]:
            if adj[delta] == delta or delta in path or adj[delta] in path:
                continue
            path.append(delta)
            yield from extend(path, fo[adj[delta]])
            path.pop()

    yield from extend([], fo[p])


def _default_route(d: PlanarDiagram) -> tuple:
    meta = d.meta
    need = ("bottom_junction", "top_junction", "bottom_arc", "top_arc")
    if any(meta.get(k) is None for k in need):
        raise TuckError("tucking needs both tangles to meet the closure at crossings")
    adj = d.adj
    x = meta["bottom_junction"]
    edges = [frozenset((e, adj[e])) for e in
             (meta["bottom_arc"], meta["top_arc"], meta["top_junction"])]
    open_adj, p, q, _ = lift(adj, x, adj[x], [])
    for path, _t in reroutes(open_adj, p, q, 3):
        if [frozenset((e, open_adj[e])) for e in path] == edges:
            return path
    raise TuckError("the standard tuck route does not embed in this diagram")


def tuck(d: PlanarDiagram, route: Sequence[int] | None = None) -> PlanarDiagram:
    """Apply the tucking construct to a numerator closure ``N(A + B)``.

    The bottom arc joining A to B is taken off and laid back underneath the
    right-hand block: it runs down under the bottom closure arc, around B
    under the top closure arc, and back down under the top junction arc to
    its old endpoint on B.  Three crossings are added; the result is
    isotopic to ``d``.  ``route`` overrides the crossing sequence (darts of
    ``d`` as in :func:`lay_under`).
    """
    meta = d.meta or {}
    if "bottom_junction" not in meta:
        raise TuckError("diagram has no identified junction arc; build it with sum_diagram")
    x = meta["bottom_junction"]
    if route is None:
        route = _default_route(d)
    # lifting a bare edge keeps dart numbers, so the route is valid as given
    open_adj, p, q, _ = lift(d.adj, x, d.adj[x], [])
    out = lay_under(open_adj, p, q, route, d.free_loops, d.shade)
    out.meta = {"tuck_crossings": list(range(d.n_crossings, out.n_crossings))}
    return out
