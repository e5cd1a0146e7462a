import random

import pytest

from hardunknots import kernel
from hardunknots.diagram import apply_move, growing_moves

compiled = kernel.compiled_kernel
py = kernel.python_kernel
needs_compiled = pytest.mark.skipif(compiled is None, reason="compiled kernel not built")


def corpus(fixtures, n=150, seed=3):
    rng = random.Random(seed)
    out = list(fixtures.values())
    while len(out) < n:
        d = rng.choice(list(fixtures.values()))
        for _ in range(rng.randint(1, 2)):
            d = apply_move(d, rng.choice(growing_moves(d)))
        out.append(d)
    return out


def test_selection():
    assert kernel.IMPLEMENTATION in ("cython", "python")
    assert py.IMPLEMENTATION == "python"


@needs_compiled
def test_codes_agree(fixtures):
    for d in corpus(fixtures):
        assert compiled.canonical_code(d.adj, d.free_loops) == py.canonical_code(d.adj, d.free_loops)
        assert compiled.symmetric_code(d.adj, d.free_loops) == py.symmetric_code(d.adj, d.free_loops)


@needs_compiled
def test_expansion_agrees(fixtures):
    for d in corpus(fixtures, n=30):
        cap = d.n_crossings + 2
        a = compiled.expand(d.adj, d.free_loops, cap)
        b = py.expand(d.adj, d.free_loops, cap)
        assert [(m, tuple(x), l, k) for m, x, l, k in a] == [(m, tuple(x), l, k) for m, x, l, k in b]


def test_symmetric_code_quotients(fixtures):
    d = fixtures["culprit"]
    key = py.symmetric_code(d.adj)
    assert py.symmetric_code(d.mirror().adj) == key
    assert py.symmetric_code(d.reflect().adj) == key
    assert py.canonical_code(d.mirror().adj) != py.canonical_code(d.adj)


def test_free_loops_in_code():
    assert py.canonical_code((), 1) != py.canonical_code((), 2)
    if compiled is not None:
        assert compiled.canonical_code((), 2) == py.canonical_code((), 2)


def test_fallback_is_selected_on_request():
    import os
    import subprocess
    import sys
    env = dict(os.environ, HARDUNKNOTS_PURE_PYTHON="1")
    code = ("from hardunknots import kernel, fixtures; from hardunknots.rsearch import unknot_search;"
            "print(kernel.IMPLEMENTATION, unknot_search(fixtures.load('H'), 10).top)")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.split() == ["python", "10"], out.stderr
