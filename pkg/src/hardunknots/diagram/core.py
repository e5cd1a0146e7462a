"""Planar knot diagrams stored as dart involutions.

A diagram with ``V`` crossings has ``4V`` darts.  Dart ``4*c + s`` is slot
``s`` of crossing ``c``; slots run counterclockwise and the even slots
(0 and 2) carry the under-strand.  ``adj[d]`` is the dart at the other end of
the edge leaving through ``d``.  Faces are the orbits of
``phi(d) = next_ccw(adj[d])``: each orbit lists the darts whose outgoing edge
has that face on its right-hand side.
"""
from __future__ import annotations

import json
from typing import Iterable, Sequence

__all__ = [
    "PlanarDiagram", "DiagramError", "nxt", "prv", "opp", "face_orbits",
    "PD_FORMAT_VERSION",
]

PD_FORMAT_VERSION = 1


class DiagramError(ValueError):
    pass


def nxt(d: int) -> int:
    return (d & ~3) | ((d + 1) & 3)


def prv(d: int) -> int:
    return (d & ~3) | ((d + 3) & 3)


def opp(d: int) -> int:
    return d ^ 2


def face_orbits(adj: Sequence[int]) -> list[tuple[int, ...]]:
    """Orbits of ``phi``, each starting at its least dart, sorted."""
    seen = [False] * len(adj)
    out = []
    for d0 in range(len(adj)):
        if seen[d0]:
            continue
        orbit = []
        d = d0
        while not seen[d]:
            seen[d] = True
            orbit.append(d)
            d = nxt(adj[d])
        out.append(tuple(orbit))
    return out


def _components(adj: Sequence[int]) -> list[list[int]]:
    """Crossing sets of the connected pieces of the projection."""
    n = len(adj) // 4
    comp = [-1] * n
    out = []
    for c0 in range(n):
        if comp[c0] >= 0:
            continue
        stack = [c0]
        comp[c0] = len(out)
        members = []
        while stack:
            c = stack.pop()
            members.append(c)
            for s in range(4):
                c2 = adj[4 * c + s] >> 2
                if comp[c2] < 0:
                    comp[c2] = len(out)
                    stack.append(c2)
        out.append(sorted(members))
    return out


class PlanarDiagram:
    """A closed diagram on the sphere.

    ``shade`` fixes the checkerboard colouring: it is the sign of crossing 0.
    A crossing is positive when the region on the right is shaded as one
    walks towards it along the over-arc, i.e. when the corner between its
    slots 1 and 2 is shaded.
    """

    __slots__ = ("adj", "free_loops", "shade", "meta", "_faces", "_signs")

    def __init__(self, adj: Iterable[int], free_loops: int = 0, shade: bool = True,
                 validate: bool = True):
        self.adj = tuple(adj)
        self.free_loops = int(free_loops)
        self.shade = bool(shade)
        self.meta = {}
        self._faces = None
        self._signs = None
        if validate:
            self.validate()

    # -- structure -------------------------------------------------------
    @property
    def n_crossings(self) -> int:
        return len(self.adj) // 4

    def __len__(self) -> int:
        return self.n_crossings

    def __eq__(self, other) -> bool:
        return (isinstance(other, PlanarDiagram) and self.adj == other.adj
                and self.free_loops == other.free_loops)

    def __hash__(self) -> int:
        return hash((self.adj, self.free_loops))

    def __repr__(self) -> str:
        return f"PlanarDiagram(crossings={self.n_crossings}, free_loops={self.free_loops})"

    def validate(self) -> None:
        adj = self.adj
        n = len(adj)
        if n % 4:
            raise DiagramError("dart count must be a multiple of 4")
        if self.free_loops < 0:
            raise DiagramError("negative free loop count")
        for d, e in enumerate(adj):
            if not 0 <= e < n or e == d or adj[e] != d:
                raise DiagramError(f"dart {d} is not paired correctly (adj={e})")
        comps = _components(adj)
        orbits = face_orbits(adj)
        if len(orbits) != n // 4 + 2 * len(comps):
            raise DiagramError(
                f"rotation system is not planar: {len(orbits)} faces for "
                f"{n // 4} crossings in {len(comps)} piece(s)")

    def components(self) -> list[list[int]]:
        return _components(self.adj)

    def faces(self) -> list[tuple[int, ...]]:
        if self._faces is None:
            self._faces = face_orbits(self.adj)
        return self._faces

    def face_of(self) -> list[int]:
        fo = [0] * len(self.adj)
        for i, f in enumerate(self.faces()):
            for d in f:
                fo[d] = i
        return fo

    def strands(self) -> list[list[int]]:
        """Link components as cyclic lists of outgoing darts (free loops excluded)."""
        adj = self.adj
        seen = [False] * len(adj)
        out = []
        for d0 in range(len(adj)):
            if seen[d0] or seen[adj[d0]]:
                continue
            walk = []
            d = d0
            while True:
                seen[d] = True
                seen[adj[d]] = True
                walk.append(d)
                d = opp(adj[d])
                if d == d0:
                    break
            out.append(walk)
        return out

    def n_components(self) -> int:
        return len(self.strands()) + self.free_loops

    # -- checkerboard signs ------------------------------------------------
    def signs(self) -> list[int]:
        """+1/-1 per crossing from the checkerboard colouring."""
        if self._signs is None:
            adj = self.adj
            n = self.n_crossings
            faces = self.faces()
            fo = self.face_of()
            colour = [-1] * len(faces)
            for comp in self.components():
                # colour each piece from its least crossing; pieces of a split
                # diagram are coloured independently
                start = fo[4 * comp[0] + 2]
                if colour[start] >= 0:
                    continue
                colour[start] = 1 if self.shade else 0
                stack = [start]
                while stack:
                    f = stack.pop()
                    for d in faces[f]:
                        g = fo[adj[d]]
                        if colour[g] < 0:
                            colour[g] = 1 - colour[f]
                            stack.append(g)
                        elif colour[g] == colour[f]:
                            raise DiagramError("faces are not two-colourable")
            self._signs = [1 if colour[fo[4 * c + 2]] else -1 for c in range(n)]
        return list(self._signs)

    def is_alternating(self) -> bool:
        """Every edge joins an over-slot to an under-slot."""
        return all((d ^ e) & 1 for d, e in enumerate(self.adj))

    # -- transformations -------------------------------------------------
    def relabel(self, perm: Sequence[int], rot: Sequence[int] | None = None) -> "PlanarDiagram":
        """Renumber crossing c to perm[c], shifting its slots by rot[c] (even)."""
        n = self.n_crossings
        rot = rot or [0] * n

        def f(d):
            c, s = d >> 2, d & 3
            return 4 * perm[c] + ((s + rot[c]) & 3)

        new = [0] * len(self.adj)
        for d, e in enumerate(self.adj):
            new[f(d)] = f(e)
        sign0 = self.signs()[perm.index(0)] if n else 1
        return PlanarDiagram(new, self.free_loops, sign0 > 0)

    def mirror(self) -> "PlanarDiagram":
        """Switch every crossing."""
        new = _map_darts(self.adj, lambda d: (d & ~3) | ((d + 1) & 3))
        return PlanarDiagram(new, self.free_loops, not self.shade, validate=False)

    def reflect(self) -> "PlanarDiagram":
        """Mirror the plane (reverse every rotation, keep over/under)."""
        new = _map_darts(self.adj, lambda d: (d & ~3) | ((4 - (d & 3)) & 3))
        return PlanarDiagram(new, self.free_loops, not self.shade, validate=False)

    def switch_crossing(self, c: int) -> "PlanarDiagram":
        if not 0 <= c < self.n_crossings:
            raise IndexError(f"no crossing {c}")
        new = _map_darts(self.adj, lambda d: (d & ~3) | ((d + 1) & 3) if d >> 2 == c else d)
        signs = self.signs()
        signs[c] = -signs[c]
        return PlanarDiagram(new, self.free_loops, signs[0] > 0, validate=False)

    # -- codes -----------------------------------------------------------
    def canonical_code(self) -> bytes:
        from ..kernel import canonical_code
        return canonical_code(self.adj, self.free_loops)

    def search_key(self) -> bytes:
        from ..kernel import symmetric_code
        return symmetric_code(self.adj, self.free_loops)

    # -- PD code ---------------------------------------------------------
    def pd_code(self) -> list[tuple[list[int], str]]:
        """Crossings as (arcs ccw from the incoming under-strand, sign)."""
        adj = self.adj
        arc = {}
        incoming = [False] * len(adj)
        label = 1
        for walk in self.strands():
            for d in walk:
                arc[d] = arc[adj[d]] = label
                incoming[adj[d]] = True
                label += 1
        signs = self.signs()
        out = []
        for c in range(self.n_crossings):
            start = 4 * c if incoming[4 * c] else 4 * c + 2
            arcs = [arc[4 * c + ((start + j) & 3)] for j in range(4)]
            out.append((arcs, "+" if signs[c] > 0 else "-"))
        return out

    def to_pd_dict(self) -> dict:
        return {
            "format": "hardunknots-pd",
            "version": PD_FORMAT_VERSION,
            "crossings": [{"arcs": a, "sign": s} for a, s in self.pd_code()],
            "free_loops": self.free_loops,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_pd_dict(), sort_keys=True)

    @classmethod
    def from_pd(cls, crossings: Sequence, free_loops: int = 0) -> "PlanarDiagram":
        """Build from PD records ``{"arcs": [i,j,k,l], "sign": "+"}``, or bare
        arc lists (signs then default to crossing 0 positive)."""
        where: dict[int, list[int]] = {}
        signs = []
        for c, rec in enumerate(crossings):
            if isinstance(rec, dict):
                arcs, sign = rec["arcs"], rec.get("sign")
            else:
                arcs, sign = rec, None
            if len(arcs) != 4:
                raise DiagramError(f"crossing {c} does not have four arcs")
            for s, a in enumerate(arcs):
                where.setdefault(int(a), []).append(4 * c + s)
            signs.append(sign)
        adj = [0] * (4 * len(crossings))
        for a, darts in where.items():
            if len(darts) != 2:
                raise DiagramError(f"arc {a} occurs {len(darts)} times, expected 2")
            x, y = darts
            adj[x], adj[y] = y, x
        shade = signs[0] != "-" if signs else True
        d = cls(adj, free_loops, shade)
        for c, (s, got) in enumerate(zip(signs, d.signs())):
            if s is not None and (s == "+") != (got > 0):
                raise DiagramError(f"crossing {c} sign {s} contradicts the checkerboard colouring")
        return d

    @classmethod
    def from_json(cls, text: str) -> "PlanarDiagram":
        data = json.loads(text)
        if isinstance(data, list):
            return cls.from_pd(data)
        return cls.from_pd(data["crossings"], data.get("free_loops", 0))


def _map_darts(adj: Sequence[int], f) -> list[int]:
    new = [0] * len(adj)
    for d, e in enumerate(adj):
        new[f(d)] = f(e)
    return new
