"""Conway-circle search with a bracket test for rational sides.

A Conway circle meets a diagram in four points on four distinct edges and
cuts it into two tangle diagrams.  A side is *possibly rational* when its
tangle bracket pair agrees, up to a unit, with that of the rational tangle
of the same determinant data.  A diagram none of whose Conway circles has
two possibly rational sides is certainly not the numerator closure of a sum
of two rational tangle diagrams.

Used to vet the hard fixtures; not part of the installed package.

    python3 tools/conway.py [FIXTURE ...]
"""
from __future__ import annotations

import cmath
import sys
from collections import defaultdict
from fractions import Fraction as Q
from math import gcd
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from hardunknots.diagram.build import NE, NW, SE, SW, build_tangle_diagram  # noqa: E402
from hardunknots.cfrac import Fraction, expand_cf  # noqa: E402

A0 = cmath.exp(1j * cmath.pi / 4)
_A_PAIRS = ((0, 1), (2, 3))
_B_PAIRS = ((1, 2), (3, 0))


def _padd(p, q, k=1):
    out = defaultdict(int, p)
    for e, c in q.items():
        out[e] += k * c
    return {e: c for e, c in out.items() if c}


def _delta_pow(m, shift):
    term = {shift: 1}
    for _ in range(m):
        nt = defaultdict(int)
        for e, c in term.items():
            nt[e + 2] -= c
            nt[e - 2] -= c
        term = {e: c for e, c in nt.items() if c}
    return term


def tangle_bracket(crossings, partner, ends):
    """Bracket pair ``(f_X, f_Y)`` of a tangle.

    ``partner[d]`` is a dart of the tangle or an endpoint index 0..3 given
    as ``-(i+1)``; ``ends[i]`` is the dart at endpoint i, listed in cyclic
    order.  X pairs endpoints (0,1),(2,3); Y pairs (1,2),(3,0).
    """
    idx = {c: i for i, c in enumerate(crossings)}
    darts = [4 * c + s for c in crossings for s in range(4)]
    n = len(crossings)
    fx, fy = {}, {}
    for state in range(1 << n):
        parent = {d: d for d in darts}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for d in darts:
            e = partner[d]
            if e >= 0:
                parent[find(d)] = find(e)
        for c in crossings:
            pairs = _A_PAIRS if (state >> idx[c]) & 1 == 0 else _B_PAIRS
            for s, t in pairs:
                parent[find(4 * c + s)] = find(4 * c + t)
        a = n - bin(state).count("1")
        roots = {find(d) for d in darts}
        er = [find(ends[i]) for i in range(4)]
        loops = len(roots - set(er))
        term = _delta_pow(loops, a - (n - a))
        if er[0] == er[1]:
            fx = _padd(fx, term)
        elif er[1] == er[2]:
            fy = _padd(fy, term)
        else:
            raise AssertionError("non-planar endpoint pairing")
    return fx, fy


def _std_pair(r: Fraction):
    t = build_tangle_diagram(expand_cf(r)) if not r.is_infinite else None
    if t is None:
        return {0: 1}, {}
    if not t.n_crossings:
        return ({}, {0: 1})
    partner = {}
    code = {NW: -1, SW: -2, SE: -3, NE: -4}
    for d, e in enumerate(t.adj):
        partner[d] = code[e] if e < 0 else e
    ends = [t.ends[-NW - 1], t.ends[-SW - 1], t.ends[-SE - 1], t.ends[-NE - 1]]
    return tangle_bracket(list(range(t.n_crossings)), partner, ends)


def _norm(pair):
    f, g = pair
    allk = list(f) + list(g)
    if not allk:
        return ()
    lo = min(allk)
    lead = (f or g)[min(f) if f else min(g)]
    s = 1 if lead > 0 else -1
    return (tuple(sorted((e - lo, s * c) for e, c in f.items())),
            tuple(sorted((e - lo, s * c) for e, c in g.items())))


def _val(p):
    return sum(c * A0 ** e for e, c in p.items())


def possibly_rational(fx, fy, n_crossings: int) -> bool:
    """Could a tangle with this bracket pair and at most ``n_crossings``
    crossings be rational?  A rational tangle diagram has at least as many
    crossings as the term sum of its canonical continued fraction."""
    a = round(abs(_val(fy)))
    b = round(abs(_val(fx)))
    if (a, b) == (0, 0) or gcd(a, b) != 1:
        return False
    target = {_norm((fx, fy)), _norm((fy, fx))}
    cands = []
    if b == 0:
        cands = [Fraction(1, 0)]
    elif a == 0:
        cands = [Fraction(0, 1)]
    else:
        for s in (1, -1):
            cands += [Fraction(s * a, b), Fraction(s * b, a)]
    for r in cands:
        if not r.is_infinite and sum(abs(t) for t in expand_cf(r)) > n_crossings:
            continue
        p = _std_pair(r)
        if _norm(p) in target or _norm((p[1], p[0])) in target:
            return True
    return False


def conway_circles(adj):
    """Yield ``(cut_darts, side_crossings)`` for Conway circles meeting four
    distinct edges; ``cut_darts[i]`` is the cut edge's dart on that side."""
    from hardunknots.diagram.core import face_orbits
    orbits = face_orbits(adj)
    fo = {}
    pos = {}
    for i, f in enumerate(orbits):
        for j, d in enumerate(f):
            fo[d] = i
            pos[d] = j
    seen = set()
    n = len(adj) // 4

    def chords_ok(path):
        # path: darts delta_i crossed; the curve is in face fo[delta_i] before
        # crossing delta_i and in fo[adj[delta_i]] after
        chords = defaultdict(list)
        k = len(path)
        for i in range(k):
            ein = adj[path[i - 1]]
            eout = path[i]
            chords[fo[eout]].append((pos[ein], pos[eout]))
        for f, cs in chords.items():
            L = len(orbits[f])
            for x in range(len(cs)):
                for y in range(x + 1, len(cs)):
                    (i1, j1), (i2, j2) = cs[x], cs[y]
                    if len({i1, j1, i2, j2}) < 4:
                        return False

                    def btw(t):
                        return 0 < (t - i1) % L < (j1 - i1) % L
                    if btw(i2) != btw(j2):
                        return False
        return True

    def rec(path, face, start):
        if len(path) == 4:
            if face == start and chords_ok(path):
                yield list(path)
            return
        for d in orbits[face]:
            e = frozenset((d, adj[d]))
            if any(e == frozenset((p, adj[p])) for p in path):
                continue
            path.append(d)
            yield from rec(path, fo[adj[d]], start)
            path.pop()

    for start in range(len(orbits)):
        for path in rec([], start, start):
            key = frozenset(frozenset((p, adj[p])) for p in path)
            if key in seen:
                continue
            seen.add(key)
            cut = {frozenset((p, adj[p])) for p in path}
            # crossings on the right of the curve: the far end of each cut
            # dart's ... found by flood fill avoiding cut edges
            comp = [-1] * n
            ncomp = 0
            for c0 in range(n):
                if comp[c0] >= 0:
                    continue
                stack = [c0]
                comp[c0] = ncomp
                while stack:
                    c = stack.pop()
                    for s in range(4):
                        d = 4 * c + s
                        if frozenset((d, adj[d])) in cut:
                            continue
                        c2 = adj[d] >> 2
                        if comp[c2] < 0:
                            comp[c2] = ncomp
                            stack.append(c2)
                ncomp += 1
            if ncomp != 2:
                yield path, None
                continue
            side = [c for c in range(n) if comp[c] == 0]
            yield path, side


def rational_sum_circles(adj):
    """Conway circles whose two sides are both possibly rational.

    Circles with an undetermined side split are reported too (conservative).
    """
    out = []
    n = len(adj) // 4
    for path, side in conway_circles(adj):
        if side is None:
            out.append((path, None))
            continue
        ok = True
        for S in (set(side), set(range(n)) - set(side)):
            ends = []
            for p in path:
                ends.append(p if p >> 2 in S else adj[p])
            partner = {}
            for c in S:
                for s in range(4):
                    d = 4 * c + s
                    partner[d] = -(ends.index(d) + 1) if d in ends else adj[d]
            fx, fy = tangle_bracket(sorted(S), partner, ends)
            if not possibly_rational(fx, fy, len(S)):
                ok = False
                break
        if ok:
            out.append((path, side))
    return out


def main(argv=None) -> int:
    from hardunknots import fixtures
    names = (sys.argv[1:] if argv is None else argv) or fixtures.names()
    for name in names:
        d = fixtures.load(name)
        hits = rational_sum_circles(d.adj)
        print(f"{name}\t{d.n_crossings} crossings\t{len(hits)} circles with two possibly rational sides")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
