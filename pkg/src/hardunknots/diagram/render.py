"""SVG drawings of planar diagrams.

Layout is a barycentric embedding of the subdivided map (crossings, edge
midpoints and face centres, which triangulate the sphere): the largest
face is pinned to a circle and every other point sits at the average of
its neighbours.  The solve is a fixed linear system, so the
output depends only on the diagram.  At each crossing the over-strand is
drawn through and the under-strand stops short on both sides.
"""
from __future__ import annotations

import math
from typing import Union

import numpy as np

from .build import TangleDiagram, closure
from .core import PlanarDiagram

__all__ = ["render_svg", "layout"]

SIZE = 400.0
MARGIN = 30.0
GAP = 0.28  # fraction of the stub removed next to an under-crossing


def layout(d: PlanarDiagram):
    """Positions for crossings and edge points.

    Returns ``(cross_xy, edges)``: ``cross_xy[c]`` is a point and ``edges``
    maps each dart ``e < adj[e]`` to the list of its interior points, in
    order from ``e`` toward ``adj[e]``.
    """
    adj = d.adj
    n = d.n_crossings
    faces = d.faces()
    # vertices: crossings, then edge midpoints (two on a kink), then faces
    edge_pts = {}
    nv = n
    for e in range(4 * n):
        if e < adj[e]:
            k = 2 if adj[e] >> 2 == e >> 2 else 1
            edge_pts[e] = list(range(nv, nv + k))
            nv += k
    face_v = list(range(nv, nv + len(faces)))
    nv += len(faces)
    nbrs = [set() for _ in range(nv)]

    def link(u, v):
        nbrs[u].add(v)
        nbrs[v].add(u)

    def along(e):
        # points met leaving the crossing along dart e
        return edge_pts[e] if e < adj[e] else edge_pts[adj[e]][::-1]

    for e, pts in edge_pts.items():
        chain = [e >> 2] + pts + [adj[e] >> 2]
        for u, v in zip(chain, chain[1:]):
            link(u, v)
    outer = max(range(len(faces)), key=lambda i: (len(faces[i]), -i))
    ring = []
    for i, f in enumerate(faces):
        for e in f:
            walk = [e >> 2] + along(e)
            if i == outer:
                ring.extend(walk)
            else:
                for u in walk:
                    link(face_v[i], u)
    fixed = {}
    m = len(ring)
    for k, v in enumerate(ring):
        if v not in fixed:
            ang = 2 * math.pi * k / m
            fixed[v] = (math.cos(ang), -math.sin(ang))
    fixed[face_v[outer]] = (0.0, 0.0)  # unused; keeps the system square
    free = [v for v in range(nv) if v not in fixed]
    index = {v: i for i, v in enumerate(free)}
    xy = np.zeros((nv, 2))
    for v, p in fixed.items():
        xy[v] = p
    if free:
        A = np.zeros((len(free), len(free)))
        b = np.zeros((len(free), 2))
        for v in free:
            i = index[v]
            A[i, i] = len(nbrs[v])
            for u in sorted(nbrs[v]):
                if u in index:
                    A[i, index[u]] -= 1
                else:
                    b[i] += xy[u]
        try:
            xy[free] = np.linalg.solve(A, b)
        except np.linalg.LinAlgError:
            xy[free] = np.linalg.lstsq(A, b, rcond=None)[0]
    scale = (SIZE - 2 * MARGIN) / 2
    pos = [(MARGIN + scale * (1 + x), MARGIN + scale * (1 + y)) for x, y in xy]
    cross_xy = pos[:n]
    edges = {e: [pos[v] for v in pts] for e, pts in edge_pts.items()}
    return cross_xy, edges


def _fmt(p) -> str:
    return f"{p[0]:.2f},{p[1]:.2f}"


def _first_point(edges, adj, e):
    """The subdivision point next to the crossing, on the edge leaving ``e``."""
    return edges[e][0] if e < adj[e] else edges[adj[e]][-1]


def render_svg(d: Union[PlanarDiagram, TangleDiagram], title: str | None = None) -> str:
    """SVG 1.1 text; one ``<g class="crossing">`` per crossing."""
    if isinstance(d, TangleDiagram):
        d = closure(d, "numerator")
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SIZE:.0f}" '
        f'height="{SIZE:.0f}" viewBox="0 0 {SIZE:.0f} {SIZE:.0f}">',
    ]
    if title:
        safe = title.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
        out.append(f"<title>{safe}</title>")
    out.append('<g fill="none" stroke="black" stroke-width="3" stroke-linejoin="round" '
               'stroke-linecap="round">')
    n = d.n_crossings
    if n:
        adj = d.adj
        cross_xy, edges = layout(d)
        for e in sorted(edges):
            pts = edges[e]
            out.append(f'<polyline class="edge" points="{" ".join(_fmt(p) for p in pts)}"/>')
        for c in range(n):
            cx, cy = cross_xy[c]
            out.append(f'<g class="crossing" id="c{c}">')
            # odd slots carry the over-strand straight through
            p1 = _first_point(edges, adj, 4 * c + 1)
            p3 = _first_point(edges, adj, 4 * c + 3)
            out.append(f'<polyline points="{_fmt(p1)} {cx:.2f},{cy:.2f} {_fmt(p3)}"/>')
            for s in (0, 2):
                px, py = _first_point(edges, adj, 4 * c + s)
                gx, gy = cx + GAP * (px - cx), cy + GAP * (py - cy)
                out.append(f'<line x1="{px:.2f}" y1="{py:.2f}" x2="{gx:.2f}" y2="{gy:.2f}"/>')
            out.append("</g>")
    # crossingless circles sit in a row along the bottom edge
    r = 12.0
    for k in range(d.free_loops):
        x = MARGIN + r + k * 3 * r
        out.append(f'<circle class="loop" cx="{x:.2f}" cy="{SIZE - MARGIN:.2f}" r="{r:.2f}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
