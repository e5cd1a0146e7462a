"""Farey series, Stern-Brocot paths, Pick's theorem and Ford circles.

Two fractions ``a/b`` and ``c/d`` with ``|ad - bc| = 1`` form an unknot
pair: ``N([a/b] - [c/d])`` is unknotted.  The same condition says they are
neighbours in some Farey series, span a unimodular lattice triangle with the
origin, and have tangent Ford circles.  Everything here is exact.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Q
from math import gcd
from typing import Iterable, Sequence

from .cfrac import Fraction, as_fraction, normalize

__all__ = [
    "mediant", "farey_series", "farey_by_mediants", "sb_path_of", "fraction_of_path",
    "franel_landau_sum", "LatticePolygon", "PolygonError", "pick_area", "pick_counts",
    "lattice_scan", "is_unimodular_triangle", "FordCircle", "ford_circle", "ford_tangent",
    "read_polygon",
]


def mediant(f1, f2) -> Fraction:
    """``(a + c) / (b + d)``; the mediant of 0/1 and 1/0 is 1/1."""
    f1, f2 = as_fraction(f1), as_fraction(f2)
    return normalize(f1.num + f2.num, f1.den + f2.den)


def _limit(x) -> Q:
    x = Q(str(x)) if not isinstance(x, (int, Q)) else Q(x)
    if x <= 1:
        raise ValueError("the Farey bound must exceed 1")
    return x


def farey_series(x) -> list[Fraction]:
    """Reduced ``p/q`` with ``0 < p/q <= 1`` and ``q < x``, ascending."""
    x = _limit(x)
    qmax = int(x) - 1 if x.denominator == 1 else int(x)
    # next-term recurrence of the Farey sequence of order qmax
    out = []
    a, b, c, d = 0, 1, 1, qmax
    while c <= d:
        out.append(Fraction(c, d))
        k = (qmax + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b
    return out


def farey_by_mediants(x) -> list[Fraction]:
    """The same series built by repeated mediants from 0/1 and 1/1."""
    x = _limit(x)
    row = [Fraction(0, 1), Fraction(1, 1)]
    while True:
        new = [row[0]]
        grew = False
        for u, v in zip(row, row[1:]):
            m = mediant(u, v)
            if m.den < x:
                new.append(m)
                grew = True
            new.append(v)
        row = new
        if not grew:
            break
    return row[1:]


def sb_path_of(f) -> str:
    """Stern-Brocot path from 1/1: ``[a1, ..., an]`` gives ``R^a1 L^a2 ...``
    with the last exponent lowered by one."""
    f = as_fraction(f)
    if f.is_infinite or f.num <= 0:
        raise ValueError("Stern-Brocot paths need a positive finite fraction")
    terms = list(_positive_cf(f))
    terms[-1] -= 1
    return "".join(("R" if i % 2 == 0 else "L") * a for i, a in enumerate(terms))


def _positive_cf(f: Fraction) -> list[int]:
    p, q = f.num, f.den
    out = []
    while q:
        a, r = divmod(p, q)
        out.append(a)
        p, q = q, r
    return out


def fraction_of_path(path: str) -> Fraction:
    """Inverse of :func:`sb_path_of`."""
    # walk the tree keeping the bounding fractions
    lo = (0, 1)
    hi = (1, 0)
    cur = (1, 1)
    for ch in path.strip().upper():
        if ch == "R":
            lo = cur
        elif ch == "L":
            hi = cur
        else:
            raise ValueError(f"path letters must be R or L, got {ch!r}")
        cur = (lo[0] + hi[0], lo[1] + hi[1])
    return Fraction(*cur)


def franel_landau_sum(x) -> Fraction:
    """``sum_j |F_j - j/A|`` over the Farey series of ``x`` (length ``A``)."""
    F = farey_series(x)
    A = len(F)
    total = Q(0)
    for j, f in enumerate(F, start=1):
        total += abs(Q(f.num, f.den) - Q(j, A))
    return normalize(total.numerator, total.denominator)


# -- lattice polygons --------------------------------------------------------

class PolygonError(ValueError):
    pass


def _segments_cross(p1, p2, p3, p4) -> bool:
    def orient(a, b, c):
        v = (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
        return (v > 0) - (v < 0)

    def on_seg(a, b, c):
        return min(a[0], b[0]) <= c[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= c[1] <= max(a[1], b[1])

    o1, o2 = orient(p1, p2, p3), orient(p1, p2, p4)
    o3, o4 = orient(p3, p4, p1), orient(p3, p4, p2)
    if o1 != o2 and o3 != o4:
        return True
    return ((o1 == 0 and on_seg(p1, p2, p3)) or (o2 == 0 and on_seg(p1, p2, p4))
            or (o3 == 0 and on_seg(p3, p4, p1)) or (o4 == 0 and on_seg(p3, p4, p2)))


@dataclass(frozen=True)
class LatticePolygon:
    """A simple polygon with integer vertices (the closing edge is implied)."""

    vertices: tuple

    def __init__(self, vertices: Iterable[Sequence[int]]):
        vs = tuple((int(x), int(y)) for x, y in vertices)
        object.__setattr__(self, "vertices", vs)
        self._check()

    def _check(self):
        vs = self.vertices
        n = len(vs)
        if n < 3:
            raise PolygonError("a polygon needs at least three vertices")
        if len(set(vs)) != n:
            raise PolygonError("repeated vertex")
        if _twice_area(vs) == 0:
            raise PolygonError("degenerate polygon (zero area)")
        edges = [(vs[i], vs[(i + 1) % n]) for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                if j == i + 1 or (i == 0 and j == n - 1):
                    # neighbours share one endpoint; they may not overlap
                    a, b = edges[i]
                    c, e = edges[j]
                    shared = b if j == i + 1 else a
                    other1 = a if j == i + 1 else b
                    other2 = e if j == i + 1 else c
                    cross = ((other1[0] - shared[0]) * (other2[1] - shared[1])
                             - (other1[1] - shared[1]) * (other2[0] - shared[0]))
                    dot = ((other1[0] - shared[0]) * (other2[0] - shared[0])
                           + (other1[1] - shared[1]) * (other2[1] - shared[1]))
                    if cross == 0 and dot > 0:
                        raise PolygonError("adjacent edges overlap")
                    continue
                if _segments_cross(*edges[i], *edges[j]):
                    raise PolygonError("polygon is not simple")


def _twice_area(vs) -> int:
    n = len(vs)
    return abs(sum(vs[i][0] * vs[(i + 1) % n][1] - vs[(i + 1) % n][0] * vs[i][1] for i in range(n)))


def _boundary_points(vs) -> int:
    n = len(vs)
    return sum(gcd(abs(vs[(i + 1) % n][0] - vs[i][0]), abs(vs[(i + 1) % n][1] - vs[i][1]))
               for i in range(n))


def lattice_scan(p: LatticePolygon) -> tuple[int, int]:
    """``(interior, boundary)`` lattice point counts by testing every point
    of the bounding box."""
    vs = p.vertices
    n = len(vs)
    xs = [v[0] for v in vs]
    ys = [v[1] for v in vs]
    interior = boundary = 0
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            on = False
            inside = False
            for i in range(n):
                (x1, y1), (x2, y2) = vs[i], vs[(i + 1) % n]
                if ((x2 - x1) * (y - y1) - (y2 - y1) * (x - x1) == 0
                        and min(x1, x2) <= x <= max(x1, x2) and min(y1, y2) <= y <= max(y1, y2)):
                    on = True
                    break
                if (y1 > y) != (y2 > y):
                    # crossing abscissa compared exactly: x < x1 + (y-y1)(x2-x1)/(y2-y1)
                    lhs = (x - x1) * (y2 - y1)
                    rhs = (y - y1) * (x2 - x1)
                    if (lhs < rhs) if y2 > y1 else (lhs > rhs):
                        inside = not inside
            if on:
                boundary += 1
            elif inside:
                interior += 1
    return interior, boundary


def pick_counts(p: LatticePolygon) -> tuple[Fraction, int, int]:
    """Shoelace area with interior and boundary counts.  Boundary points come
    from gcds of the edge vectors; interior points from Pick's formula."""
    twice = _twice_area(p.vertices)
    B = _boundary_points(p.vertices)
    I2 = twice - B + 2
    return normalize(twice, 2), I2 // 2, B


def pick_area(p: "LatticePolygon | Sequence") -> Fraction:
    """Area of a simple lattice polygon, checked against ``I + B/2 - 1`` with I
    and B counted by a direct lattice scan."""
    if not isinstance(p, LatticePolygon):
        p = LatticePolygon(p)
    area, I, B = pick_counts(p)
    I_scan, B_scan = lattice_scan(p)
    if (I_scan, B_scan) != (I, B):
        raise AssertionError(f"lattice scan found I={I_scan}, B={B_scan}; expected {I}, {B}")
    return area


def is_unimodular_triangle(v1: Sequence[int], v2: Sequence[int]) -> bool:
    """Triangle (0,0), v1, v2 has area 1/2, i.e. ``|ad - bc| = 1``."""
    (a, b), (c, d) = v1, v2
    det = a * d - b * c
    if det == 0:
        raise ValueError("vectors are collinear with the origin")
    return abs(det) == 1


def read_polygon(text: str) -> LatticePolygon:
    """Parse one ``x y`` integer pair per line (blank lines and ``#`` comments skipped)."""
    pts = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.replace(",", " ").split()
        if len(parts) != 2:
            raise PolygonError(f"line {lineno}: expected 'x y'")
        try:
            pts.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise PolygonError(f"line {lineno}: coordinates must be integers") from None
    return LatticePolygon(pts)


# -- Ford circles ------------------------------------------------------------

@dataclass(frozen=True)
class FordCircle:
    base: Fraction
    center: tuple  # (Q, Q)
    radius: Q

    @property
    def diameter(self) -> Q:
        return 2 * self.radius

    def to_dict(self) -> dict:
        return {"base": str(self.base), "center": [str(self.center[0]), str(self.center[1])],
                "radius": str(self.radius), "diameter": str(self.diameter)}


def ford_circle(f) -> FordCircle:
    """Circle tangent to the real line at ``a/b`` with diameter ``1/b^2``."""
    f = as_fraction(f)
    if f.is_infinite:
        raise ValueError("no Ford circle at infinity")
    r = Q(1, 2 * f.den * f.den)
    return FordCircle(f, (Q(f.num, f.den), r), r)


def ford_tangent(f1, f2) -> bool:
    """Exact test: squared centre distance equals the squared radius sum."""
    c1, c2 = ford_circle(f1), ford_circle(f2)
    if c1.base == c2.base:
        return False
    dx = c1.center[0] - c2.center[0]
    dy = c1.center[1] - c2.center[1]
    return dx * dx + dy * dy == (c1.radius + c2.radius) ** 2
