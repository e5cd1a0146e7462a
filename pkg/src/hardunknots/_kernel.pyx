# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernel: canonical codes and successor expansion.

Mirrors ``_pykernel`` exactly; the byte strings it returns must be
identical.  Move detection and rewriting are shared with the Python side,
only the code computation (the hot loop) runs in C.
"""
from libc.stdlib cimport malloc, free

from ._pykernel import _encode
from .diagram.moves import apply_raw, growing_sites, simplifying_sites

IMPLEMENTATION = "cython"


cdef list _piece_code(int* adj, int n, list members, int direction, bint switch):
    cdef int m = len(members)
    cdef int L = 5 * m
    cdef int* label = <int*> malloc(n * sizeof(int))
    cdef int* base = <int*> malloc(n * sizeof(int))
    cdef int* order = <int*> malloc(m * sizeof(int))
    cdef int* cur = <int*> malloc(L * sizeof(int))
    cdef int* best = <int*> malloc(L * sizeof(int))
    cdef bint have_best = False
    cdef int c0, s0, i, j, c, b, p, c2, pos, nlab, flip, cmp, k, start
    cdef bint aborted
    try:
        for c0 in members:
            for s0 in range(4):
                for k in range(n):
                    label[k] = -1
                label[c0] = 0
                base[c0] = s0
                order[0] = c0
                nlab = 1
                pos = 0
                flip = (s0 & 1) if switch else 0
                # cmp: sign of (cur prefix - best prefix) once they differ
                cmp = 0
                aborted = False
                i = 0
                while i < nlab:
                    c = order[i]
                    b = base[c]
                    start = pos
                    cur[pos] = (b & 1) ^ flip
                    pos += 1
                    for j in range(4):
                        p = adj[4 * c + ((b + direction * j) & 3)]
                        c2 = p >> 2
                        if label[c2] < 0:
                            label[c2] = nlab
                            base[c2] = p & 3
                            order[nlab] = c2
                            nlab += 1
                        cur[pos] = 4 * label[c2] + ((direction * ((p & 3) - base[c2])) & 3)
                        pos += 1
                    i += 1
                    if have_best and cmp == 0:
                        for k in range(start, pos):
                            if cur[k] != best[k]:
                                cmp = 1 if cur[k] > best[k] else -1
                                break
                        if cmp > 0:
                            aborted = True
                            break
                if aborted:
                    continue
                if not have_best or cmp < 0:
                    for k in range(pos):
                        best[k] = cur[k]
                    have_best = True
        return [best[k] for k in range(L)]
    finally:
        free(label)
        free(base)
        free(order)
        free(cur)
        free(best)


cdef list _pieces(int* adj, int n):
    cdef list out = []
    cdef char* seen = <char*> malloc(n)
    cdef int c0, c, s, c2
    cdef list stack, members
    try:
        for c0 in range(n):
            seen[c0] = 0
        for c0 in range(n):
            if seen[c0]:
                continue
            seen[c0] = 1
            stack = [c0]
            members = []
            while stack:
                c = stack.pop()
                members.append(c)
                for s in range(4):
                    c2 = adj[4 * c + s] >> 2
                    if not seen[c2]:
                        seen[c2] = 1
                        stack.append(c2)
            out.append(members)
        return out
    finally:
        free(seen)


cdef bytes _code(adj, int free_loops, bint symmetric):
    cdef int nd = len(adj)
    cdef int n = nd // 4
    cdef int* a = <int*> malloc((nd if nd else 1) * sizeof(int))
    cdef int i
    cdef list codes = []
    try:
        for i in range(nd):
            a[i] = adj[i]
        for members in _pieces(a, n):
            if symmetric:
                c1 = _piece_code(a, n, members, 1, True)
                c2 = _piece_code(a, n, members, -1, True)
                codes.append(c1 if c1 <= c2 else c2)
            else:
                codes.append(_piece_code(a, n, members, 1, False))
        return _encode(codes, n, free_loops)
    finally:
        free(a)


def canonical_code(adj, free_loops=0):
    """Code equal for two diagrams iff they differ by relabelling crossings."""
    return _code(adj, free_loops, False)


def symmetric_code(adj, free_loops=0):
    """Code of the orbit under reflection and switching every crossing."""
    return _code(adj, free_loops, True)


cdef list _face_orbits(adj):
    cdef int nd = len(adj)
    cdef char* seen = <char*> malloc(nd if nd else 1)
    cdef int d0, d, e
    cdef list out = []
    cdef list orbit
    try:
        for d0 in range(nd):
            seen[d0] = 0
        for d0 in range(nd):
            if seen[d0]:
                continue
            orbit = []
            d = d0
            while not seen[d]:
                seen[d] = 1
                orbit.append(d)
                e = adj[d]
                d = (e & ~3) | ((e + 1) & 3)
            out.append(tuple(orbit))
        return out
    finally:
        free(seen)


def expand(adj, int free_loops, int cap, bint keyed=True):
    """Successors within the crossing cap, in the fixed move order."""
    cdef int n = len(adj) // 4
    orbits = _face_orbits(adj)
    moves = simplifying_sites(adj, orbits)
    moves += growing_sites(adj, orbits, r1=n + 1 <= cap, r2=n + 2 <= cap)
    out = []
    for m in moves:
        new, loops = apply_raw(adj, m, free_loops)
        key = _code(new, loops, True) if keyed else None
        out.append((m, new, loops, key))
    return out
