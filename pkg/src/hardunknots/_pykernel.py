"""Pure-Python search kernel: canonical codes and successor expansion.

``_kernel.pyx`` implements the same functions in C; ``kernel.py`` picks one
at import time.  Both must produce byte-identical results.
"""
from __future__ import annotations

from typing import Sequence

from .diagram.core import face_orbits
from .diagram.moves import apply_raw, growing_sites, simplifying_sites

IMPLEMENTATION = "python"


def _piece_code(adj: Sequence[int], members: Sequence[int], direction: int, switch: bool):
    """Least code of one connected piece over starting darts (one rotation sense)."""
    best = None
    n_total = len(adj) // 4
    for c0 in members:
        for s0 in range(4):
            label = {c0: 0}
            base = {c0: s0}
            order = [c0]
            code = []
            flip = (s0 & 1) if switch else 0
            i = 0
            while i < len(order):
                c = order[i]
                b = base[c]
                code.append((b & 1) ^ flip)
                for j in range(4):
                    p = adj[4 * c + ((b + direction * j) & 3)]
                    c2 = p >> 2
                    if c2 not in label:
                        label[c2] = len(order)
                        base[c2] = p & 3
                        order.append(c2)
                    code.append(4 * label[c2] + ((direction * ((p & 3) - base[c2])) & 3))
                i += 1
                if best is not None and code > best[: len(code)]:
                    break
            else:
                if best is None or code < best:
                    best = code
    return best


def _pieces(adj: Sequence[int]) -> list[list[int]]:
    n = len(adj) // 4
    seen = [False] * n
    out = []
    for c0 in range(n):
        if seen[c0]:
            continue
        seen[c0] = True
        stack, members = [c0], []
        while stack:
            c = stack.pop()
            members.append(c)
            for s in range(4):
                c2 = adj[4 * c + s] >> 2
                if not seen[c2]:
                    seen[c2] = True
                    stack.append(c2)
        out.append(members)
    return out


def _encode(pieces_codes: list, n: int, free_loops: int) -> bytes:
    wide = 4 * n + 4 > 255
    header = [n, free_loops, len(pieces_codes)]
    flat = []
    for pc in sorted(pieces_codes):
        flat.append(len(pc))
        flat.extend(pc)
    vals = header + flat
    if not wide and max(vals, default=0) < 256:
        return b"\x00" + bytes(vals)
    return b"\x01" + b"".join(v.to_bytes(4, "little") for v in vals)


def _code(adj, free_loops, directions, switch):
    n = len(adj) // 4
    codes = []
    for members in _pieces(adj):
        cands = [_piece_code(adj, members, dr, switch) for dr in directions]
        codes.append(min(cands))
    return _encode(codes, n, free_loops)


def canonical_code(adj: Sequence[int], free_loops: int = 0) -> bytes:
    """Code equal for two diagrams iff they differ by relabelling crossings
    (rotation-preserving isomorphism of the sphere map with over/under)."""
    return _code(adj, free_loops, (1,), False)


def symmetric_code(adj: Sequence[int], free_loops: int = 0) -> bytes:
    """Code of the orbit under reflection of the sphere and switching every
    crossing; the search graph is invariant under both."""
    return _code(adj, free_loops, (1, -1), True)


def expand(adj: Sequence[int], free_loops: int, cap: int, keyed: bool = True):
    """Successors of a state within the crossing cap.

    Returns a list of ``(move, new_adj, new_free_loops, key)`` in the fixed
    move order (simplifying moves first, then kinks, then pokes).
    """
    n = len(adj) // 4
    orbits = face_orbits(adj)
    moves = simplifying_sites(adj, orbits)
    moves += growing_sites(adj, orbits, r1=n + 1 <= cap, r2=n + 2 <= cap)
    out = []
    for m in moves:
        new, loops = apply_raw(adj, m, free_loops)
        key = symmetric_code(new, loops) if keyed else None
        out.append((m, new, loops, key))
    return out
