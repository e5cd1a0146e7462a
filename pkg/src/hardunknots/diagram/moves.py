"""Reidemeister move sites and rewrites on dart diagrams.

Moves work on the raw involution ``adj`` (a sequence of ints) so that the
search kernel can share them; PlanarDiagram wrappers live at the bottom.

Move records are tuples ``(kind, a, b, c)``:

========== ======================================================
R1_simplify   a = the monogon dart
R2_simplify   a = a dart of the bigon face
R3            a = a dart of the trigon face
R1_grow       a = dart whose edge gets a kink on its right, b = over bit
R2_grow       a, b = darts of one face (a <= b), c = 1 if a's edge is over
========== ======================================================
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .core import PlanarDiagram, face_orbits, nxt, opp

__all__ = [
    "MoveSite", "StaleMove", "SIMPLIFY_KINDS", "GROW_KINDS",
    "simplifying_sites", "growing_sites", "all_sites", "apply_raw", "remove_crossings",
    "available_moves", "growing_moves", "apply_move", "is_hard", "site_of",
]

R1S, R2S, R3, R1G, R2G = "R1_simplify", "R2_simplify", "R3", "R1_grow", "R2_grow"
SIMPLIFY_KINDS = (R1S, R2S, R3)
GROW_KINDS = (R1G, R2G)


class StaleMove(ValueError):
    """The move does not apply to this diagram."""


@dataclass(frozen=True)
class MoveSite:
    kind: str
    face: int
    crossings: tuple
    darts: tuple
    over: Optional[int] = None

    @property
    def raw(self) -> tuple:
        a = self.darts[0]
        if self.kind == R1G:
            return (R1G, a, self.over, 0)
        if self.kind == R2G:
            return (R2G, a, self.darts[1], self.over)
        return (self.kind, a, 0, 0)

    def to_dict(self) -> dict:
        d = {"kind": self.kind, "darts": list(self.darts), "crossings": list(self.crossings),
             "face": self.face}
        if self.over is not None:
            d["over"] = self.over
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "MoveSite":
        return cls(d["kind"], d.get("face", -1), tuple(d.get("crossings", ())),
                   tuple(d["darts"]), d.get("over"))


# -- detection -----------------------------------------------------------

def _r3_ok(adj, f) -> bool:
    cs = {d >> 2 for d in f}
    if len(cs) != 3:
        return False
    # some strand is over (or under) at both of its trigon crossings
    return any(((e ^ adj[e]) & 1) == 0 for e in f)


def simplifying_sites(adj: Sequence[int], orbits=None) -> list[tuple]:
    if orbits is None:
        orbits = face_orbits(adj)
    out = []
    for f in orbits:
        k = len(f)
        if k == 1:
            out.append((R1S, f[0], 0, 0))
        elif k == 2:
            e1, e2 = f
            if (e1 >> 2) != (e2 >> 2) and ((e1 ^ adj[e1]) & 1) == 0:
                out.append((R2S, e1, 0, 0))
        elif k == 3 and _r3_ok(adj, f):
            out.append((R3, f[0], 0, 0))
    return out


def growing_sites(adj: Sequence[int], orbits=None, r1: bool = True, r2: bool = True) -> list[tuple]:
    if orbits is None:
        orbits = face_orbits(adj)
    out = []
    if r1:
        for d in range(len(adj)):
            out.append((R1G, d, 0, 0))
            out.append((R1G, d, 1, 0))
    if r2:
        for f in orbits:
            k = len(f)
            for i in range(k):
                a = f[i]
                for j in range(i, k):
                    b = f[j]
                    if b == adj[a]:
                        continue  # both sides of one edge
                    lo, hi = (a, b) if a <= b else (b, a)
                    out.append((R2G, lo, hi, 1))
                    out.append((R2G, lo, hi, 0))
    return out


def all_sites(adj, orbits=None) -> list[tuple]:
    if orbits is None:
        orbits = face_orbits(adj)
    return simplifying_sites(adj, orbits) + growing_sites(adj, orbits)


# -- rewrites ------------------------------------------------------------

def remove_crossings(adj: Sequence[int], gone: set, free_loops: int = 0):
    """Delete crossings and splice the strands that ran through them.

    Returns ``(new_adj, free_loops)`` with the survivors renumbered in order.
    """
    new = list(adj)
    visited = set()
    for c in sorted(gone):
        for s in range(4):
            x = 4 * c + s
            if x in visited or (adj[x] >> 2) in gone:
                continue
            # x leads out of the removed region: follow the strand inward
            visited.add(x)
            y = opp(x)
            while (adj[y] >> 2) in gone:
                visited.add(y)
                y = opp(adj[y])
                visited.add(opp(y))
            visited.add(y)
            new[adj[x]] = adj[y]
            new[adj[y]] = adj[x]
    # strands running entirely inside the region become free loops
    for c in sorted(gone):
        for s in range(4):
            d = 4 * c + s
            if d in visited:
                continue
            e = d
            while e not in visited:
                visited.add(e)
                visited.add(adj[e])
                e = opp(adj[e])
            free_loops += 1
    return _compact(new, gone), free_loops


def _compact(adj: list, gone: set) -> list:
    n = len(adj) // 4
    keep = [c for c in range(n) if c not in gone]
    idx = {c: i for i, c in enumerate(keep)}
    out = [0] * (4 * len(keep))
    for c in keep:
        for s in range(4):
            e = adj[4 * c + s]
            out[4 * idx[c] + s] = 4 * idx[e >> 2] + (e & 3)
    return out


def _r3(adj: Sequence[int], e1: int) -> list:
    """Push a strand across the opposite crossing of the trigon containing e1."""
    e2 = nxt(adj[e1])
    e3 = nxt(adj[e2])
    if nxt(adj[e3]) != e1:
        raise StaleMove("dart does not bound a trigon")
    A, B, C = e1 >> 2, e2 >> 2, e3 >> 2
    if len({A, B, C}) != 3:
        raise StaleMove("trigon crossings are not distinct")
    t, u, s = adj[e3], adj[e2], adj[e1]  # triangle darts at A, C, B (in-edges)
    # external darts in counterclockwise order around the triangle
    p = [(t & ~3) | ((t + 2) & 3), (t & ~3) | ((t + 3) & 3),
         (u & ~3) | ((u + 2) & 3), (u & ~3) | ((u + 3) & 3),
         (s & ~3) | ((s + 2) & 3), (s & ~3) | ((s + 3) & 3)]
    if not any(((e ^ adj[e]) & 1) == 0 for e in (e1, e2, e3)):
        raise StaleMove("alternating trigon admits no third move")
    under = [(x & 1) == 0 for x in p]  # strand of p[i] is under at its old crossing
    new = list(adj)
    # new corner crossings sit between p[j], p[j+1] for j = 1, 3, 5
    slot_of = {}
    idx = {1: A, 3: C, 5: B}
    for j, c in idx.items():
        k = (j + 1) % 6
        # strand s_j under here iff under at the old crossing of the same pair,
        # which sits between p[j+3] and p[j+4]
        s_under = under[(j + 3) % 6]
        order = ["ext_j", "ext_k", "int_j", "int_k"]
        if not s_under:
            order = order[1:] + order[:1]
        for sl, role in enumerate(order):
            slot_of[(j, role)] = 4 * c + sl
    ext_new = {}
    for j in (1, 3, 5):
        ext_new[p[j]] = slot_of[(j, "ext_j")]
        ext_new[p[(j + 1) % 6]] = slot_of[(j, "ext_k")]
    for x in p:
        y = adj[x]
        nx = ext_new[x]
        new[nx] = ext_new.get(y, y)
        if y not in ext_new:
            new[y] = nx
    for j in (1, 3, 5):
        a = slot_of[(j, "int_j")]
        b = slot_of[((j + 2) % 6, "int_k")]
        new[a], new[b] = b, a
    return new


def _r1_grow(adj: Sequence[int], d: int, over: int) -> list:
    n = len(adj) // 4
    K = 4 * n
    e = adj[d]
    # counterclockwise [v, u, L1, L2]; under-strand v-L1 unless rotated
    roles = ["v", "u", "L1", "L2"]
    if over:
        roles = roles[1:] + roles[:1]
    slot = {r: K + i for i, r in enumerate(roles)}
    new = list(adj) + [0, 0, 0, 0]
    new[slot["u"]], new[d] = d, slot["u"]
    new[slot["v"]], new[e] = e, slot["v"]
    new[slot["L1"]], new[slot["L2"]] = slot["L2"], slot["L1"]
    return new


def _r2_grow(adj: Sequence[int], da: int, db: int, a_over: int) -> list:
    n = len(adj) // 4
    X, Y = 4 * n, 4 * n + 4
    new = list(adj) + [0] * 8
    xr = ["bY", "au", "bv", "aY"]  # a over at X
    yr = ["av", "bX", "aX", "bu"]  # a under at Y
    if a_over:
        yr = yr[1:] + yr[:1]
    else:
        xr = xr[1:] + xr[:1]
    xs = {r: X + i for i, r in enumerate(xr)}
    ys = {r: Y + i for i, r in enumerate(yr)}

    def link(p, q):
        new[p], new[q] = q, p

    ea = adj[da]
    eb = adj[db]
    link(xs["bY"], ys["bX"])
    link(xs["aY"], ys["aX"])
    if da == db:
        # a finger of one edge side pushed across a later stretch of itself
        link(xs["au"], da)
        link(ys["av"], ys["bu"])
        link(xs["bv"], ea)
    else:
        link(xs["au"], da)
        link(ys["av"], ea)
        link(xs["bv"], eb)
        link(ys["bu"], db)
    return new


def apply_raw(adj: Sequence[int], move: tuple, free_loops: int = 0, orbits=None):
    """Apply a raw move tuple; returns ``(new_adj, free_loops)``."""
    kind, a, b, c = move
    n4 = len(adj)
    if not 0 <= a < n4:
        raise StaleMove(f"dart {a} out of range")
    if kind == R1S:
        if adj[a] != (a & ~3) | ((a + 3) & 3):
            raise StaleMove("not a monogon")
        return remove_crossings(adj, {a >> 2}, free_loops)
    if kind == R2S:
        e2 = nxt(adj[a])
        if nxt(adj[e2]) != a or (a >> 2) == (e2 >> 2) or ((a ^ adj[a]) & 1):
            raise StaleMove("not a simplifying bigon")
        return remove_crossings(adj, {a >> 2, e2 >> 2}, free_loops)
    if kind == R3:
        return _r3(adj, a), free_loops
    if kind == R1G:
        return _r1_grow(adj, a, b), free_loops
    if kind == R2G:
        if not 0 <= b < n4:
            raise StaleMove(f"dart {b} out of range")
        if b == adj[a]:
            raise StaleMove("the two darts are sides of one edge")
        # both darts must lie on one face
        d = nxt(adj[a])
        while d != a and d != b:
            d = nxt(adj[d])
        if d != b:
            raise StaleMove("darts do not share a face")
        return _r2_grow(adj, a, b, c), free_loops
    raise StaleMove(f"unknown move kind {kind!r}")


# -- PlanarDiagram wrappers ------------------------------------------------

def site_of(d: PlanarDiagram, raw: tuple, face_of=None) -> MoveSite:
    kind, a, b, c = raw
    if face_of is None:
        face_of = d.face_of()
    adj = d.adj
    if kind in (R1S, R2S, R3):
        f = d.faces()[face_of[a]]
        cs = tuple(sorted({x >> 2 for x in f}))
        return MoveSite(kind, face_of[a], cs, tuple(f))
    if kind == R1G:
        return MoveSite(kind, face_of[a], (a >> 2, adj[a] >> 2), (a,), b)
    return MoveSite(kind, face_of[a], tuple(sorted({a >> 2, adj[a] >> 2, b >> 2, adj[b] >> 2})),
                    (a, b), c)


def available_moves(d: PlanarDiagram) -> list[MoveSite]:
    """Simplifying R1 and R2 sites and all R3 sites."""
    fo = d.face_of()
    return [site_of(d, m, fo) for m in simplifying_sites(d.adj, d.faces())]


def growing_moves(d: PlanarDiagram, r1: bool = True, r2: bool = True) -> list[MoveSite]:
    fo = d.face_of()
    return [site_of(d, m, fo) for m in growing_sites(d.adj, d.faces(), r1, r2)]


def apply_move(d: PlanarDiagram, m: "MoveSite | tuple", validate: bool = True) -> PlanarDiagram:
    raw = m.raw if isinstance(m, MoveSite) else tuple(m)
    if isinstance(m, MoveSite) and m.kind in (R1S, R2S, R3):
        # the recorded face must still be the face of the recorded dart
        if not set(m.darts) <= set(d.faces()[d.face_of()[m.darts[0]]]):
            raise StaleMove("face changed since the site was computed")
    new, loops = apply_raw(d.adj, raw, d.free_loops)
    return PlanarDiagram(new, loops, True, validate=validate)


def is_hard(d: PlanarDiagram) -> bool:
    """No simplifying R1, no simplifying R2 and no R3 move anywhere."""
    return not simplifying_sites(d.adj, d.faces())
