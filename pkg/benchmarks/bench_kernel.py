"""Compare the compiled and pure-Python search kernels.

Times symmetric codes over a fixed set of diagrams and a bounded search
from the culprit fixture, and checks both kernels agree byte for byte.

    python benchmarks/bench_kernel.py [--repeat N]
"""
from __future__ import annotations

import argparse
import time

from hardunknots import fixtures, kernel
from hardunknots.diagram.moves import apply_raw, growing_sites


def corpus():
    """Every fixture plus all one-move growths of each (a few thousand states)."""
    out = []
    for name in fixtures.names():
        d = fixtures.load(name)
        out.append((d.adj, d.free_loops))
        for m in growing_sites(d.adj):
            out.append(apply_raw(d.adj, m, d.free_loops))
    return out


def time_codes(impl, states, repeat):
    t0 = time.perf_counter()
    for _ in range(repeat):
        codes = [impl.symmetric_code(a, l) for a, l in states]
    return time.perf_counter() - t0, codes


def time_search(impl, d, cap, budget):
    import heapq
    t0 = time.perf_counter()
    seen = {impl.symmetric_code(d.adj, d.free_loops)}
    heap = [(d.n_crossings, 0, d.adj, d.free_loops)]
    tick = 0
    while heap and len(seen) < budget:
        _, _, adj, loops = heapq.heappop(heap)
        for _m, new, nl, k in impl.expand(adj, loops, cap):
            if k not in seen:
                seen.add(k)
                tick += 1
                heapq.heappush(heap, (len(new) // 4, tick, tuple(new), nl))
    return time.perf_counter() - t0, len(seen)


def main(argv=None):
    ap = argparse.ArgumentParser(description="kernel benchmark")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--budget", type=int, default=20_000)
    args = ap.parse_args(argv)
    py, cy = kernel.python_kernel, kernel.compiled_kernel
    if cy is None:
        print("compiled kernel not built; only the Python kernel is available")
    states = corpus()
    print(f"corpus: {len(states)} diagrams")
    tp, codes_p = time_codes(py, states, args.repeat)
    print(f"python  symmetric_code: {tp:8.3f} s")
    d = fixtures.load("culprit")
    sp, np_ = time_search(py, d, 12, args.budget)
    print(f"python  search (cap 12, {np_} states): {sp:8.3f} s")
    if cy is not None:
        tc, codes_c = time_codes(cy, states, args.repeat)
        print(f"cython  symmetric_code: {tc:8.3f} s   speedup {tp / tc:5.1f}x")
        sc, nc = time_search(cy, d, 12, args.budget)
        print(f"cython  search (cap 12, {nc} states): {sc:8.3f} s   speedup {sp / sc:5.1f}x")
        same = codes_p == codes_c and all(
            py.canonical_code(a, l) == cy.canonical_code(a, l) for a, l in states)
        print(f"codes identical: {same}; search sizes identical: {np_ == nc}")


if __name__ == "__main__":
    main()
