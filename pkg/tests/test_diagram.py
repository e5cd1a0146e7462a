import json
import random
import re

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import cf_terms, positive_cf
from hardunknots.cfrac import CFrac, eval_cf, is_convergent_pair
from hardunknots.diagram import (
    DiagramError, PlanarDiagram, TuckError, apply_move, available_moves, build_expr,
    build_tangle_diagram, closure, enumerate_hard_sums, growing_moves, integer_tangle, is_hard,
    render_svg, sum_diagram, tuck, vflip,
)
from hardunknots.diagram.hard import positive_canonical_cfs
from oracles import bracket_up_to_unit, determinant
from hardunknots.tangle import closure_fraction

UNKNOT_BRACKET = bracket_up_to_unit((), 1)


def kinds(d):
    return sorted({m.kind for m in available_moves(d)})


def random_diagram(rng, n_moves=3, size=3):
    a = [rng.choice([-1, 1]) * rng.randint(1, size) for _ in range(rng.randint(1, size))]
    d = closure(build_tangle_diagram(a))
    for _ in range(n_moves):
        moves = growing_moves(d)
        d = apply_move(d, rng.choice(moves))
    return d


# -- construction ---------------------------------------------------------

@given(cf_terms(max_size=5))
def test_tangle_crossing_count_and_euler(terms):
    t = build_tangle_diagram(terms)
    assert t.n_crossings == sum(abs(x) for x in terms)
    for mode in ("numerator", "denominator"):
        d = closure(t, mode)
        if d.n_crossings:
            assert len(d.faces()) == d.n_crossings + 2


@given(positive_cf(max_size=5, hi=4), positive_cf(max_size=5, hi=4), st.booleans())
def test_sum_diagram_counts(a, b, flip):
    d = sum_diagram(a, [-x for x in b], flip_b=flip)
    assert d.n_crossings == sum(a) + sum(b)
    assert len(d.faces()) == d.n_crossings + 2 or d.n_crossings == 0


@given(st.lists(st.integers(1, 4), min_size=1, max_size=5))
def test_positive_canonical_is_alternating(terms):
    from hardunknots.cfrac import canonical_cf
    cf = canonical_cf(terms)
    assert closure(build_tangle_diagram(cf.terms)).is_alternating()


@settings(max_examples=60)
@given(st.lists(st.integers(-3, 3).filter(bool), min_size=1, max_size=4))
def test_closure_determinant_matches_fraction(terms):
    d = closure(build_tangle_diagram(terms))
    f = eval_cf(terms)
    assert determinant(d.adj, d.free_loops) == abs(f.num)  # 1/0 closes to the unknot


def test_small_closures():
    from hardunknots.diagram.build import zero_tangle
    z = build_tangle_diagram([0])
    assert z.n_crossings == 0
    # N([0]) is two circles, D([0]) = N([inf]) is one
    assert closure(zero_tangle()).free_loops == 2
    assert closure(zero_tangle(), "denominator").free_loops == 1
    tre = closure(build_tangle_diagram([3]))
    assert tre.n_crossings == 3 and len(tre.faces()) == 5
    assert closure_fraction(CFrac([3]), CFrac([0])).closure_fraction.num == 3
    assert build_tangle_diagram([2, -2, 3]).n_crossings == 7
    assert len(PlanarDiagram((), 1).faces()) == 0


def test_named_sum_diagrams():
    k = sum_diagram([1, 4], [0, -1, -3])
    assert k.n_crossings == 9
    d = sum_diagram([1, 3], [-1, -2])
    assert d.n_crossings == 7 and not is_hard(d)
    assert "R3" in kinds(d)
    z = sum_diagram([0], [0])
    assert z.n_crossings == 0


def test_vflip():
    t = build_tangle_diagram([1, 2, 3])
    assert vflip(vflip(t)) == t
    assert vflip(t) != t
    assert closure(vflip(t)).pd_code() != closure(t).pd_code()
    a = build_tangle_diagram([1, 2])
    assert determinant(closure(vflip(a)).adj) == determinant(closure(a).adj) == 3


# -- validation and PD ----------------------------------------------------

def test_validation_rejects_bad_codes():
    with pytest.raises(DiagramError):
        PlanarDiagram.from_pd([[1, 2, 3, 4]])
    with pytest.raises(DiagramError):
        PlanarDiagram.from_pd([[1, 1, 2]])
    with pytest.raises(DiagramError):
        PlanarDiagram([1, 0, 3])
    with pytest.raises(DiagramError):
        # non-planar rotation: a single crossing joined across
        PlanarDiagram([2, 3, 0, 1])


def test_sign_contradiction_is_rejected(fixtures):
    rec = fixtures["H"].to_pd_dict()
    # flipping one sign alone contradicts the colouring fixed by the others
    c = rec["crossings"][1]
    c["sign"] = "-" if c["sign"] == "+" else "+"
    with pytest.raises(DiagramError):
        PlanarDiagram.from_json(json.dumps(rec))


@given(st.integers(0, 10_000))
def test_pd_round_trip(seed):
    d = random_diagram(random.Random(seed))
    back = PlanarDiagram.from_json(d.to_json())
    assert back.canonical_code() == d.canonical_code()
    assert back.signs() == d.signs()


@given(st.integers(0, 10_000))
def test_relabel_invariance(seed):
    rng = random.Random(seed)
    d = random_diagram(rng)
    perm = list(range(d.n_crossings))
    rng.shuffle(perm)
    rot = [rng.choice([0, 2]) for _ in perm]
    e = d.relabel(perm, rot)
    assert e.canonical_code() == d.canonical_code()
    assert e.search_key() == d.search_key()
    assert sorted(e.signs()) == sorted(d.signs())


def test_code_distinguishes(fixtures):
    codes = {n: d.canonical_code() for n, d in fixtures.items()}
    assert len(set(codes.values())) == len(codes)
    assert codes["culprit"] != codes["H"]
    # the code depends only on the diagram, not on how it was produced
    assert fixtures["culprit"].canonical_code() == tuck(
        sum_diagram([1, 3], [-1, -2], flip_b=True)).canonical_code()


# -- faces and moves ------------------------------------------------------

def test_face_counts(fixtures):
    assert len(fixtures["culprit"].faces()) == 12
    for d in fixtures.values():
        assert len(d.faces()) == d.n_crossings + 2


def test_moves_on_named_diagrams(fixtures):
    assert available_moves(fixtures["culprit"]) == []
    kink = closure(build_tangle_diagram([1]))
    ms = available_moves(kink)
    assert ms and {m.kind for m in ms} == {"R1_simplify"}
    assert all(apply_move(kink, m).n_crossings == 0 for m in ms)


@settings(max_examples=80)
@given(st.integers(0, 10_000))
def test_move_effects_and_bracket(seed):
    rng = random.Random(seed)
    d = random_diagram(rng, n_moves=2, size=2)
    ref = bracket_up_to_unit(d.adj, d.free_loops)
    delta = {"R1_simplify": -1, "R2_simplify": -2, "R3": 0, "R1_grow": 1, "R2_grow": 2}
    for m in available_moves(d) + rng.sample(growing_moves(d), 3):
        e = apply_move(d, m)
        e.validate()
        assert e.n_crossings - d.n_crossings == delta[m.kind]
        if e.n_crossings <= 9:
            assert bracket_up_to_unit(e.adj, e.free_loops) == ref


@given(st.integers(0, 10_000))
def test_grow_then_undo(seed):
    rng = random.Random(seed)
    d = random_diagram(rng, n_moves=1)
    m = rng.choice(growing_moves(d))
    e = apply_move(d, m)
    undo = "R1_simplify" if m.kind == "R1_grow" else "R2_simplify"
    back = [apply_move(e, u).canonical_code() for u in available_moves(e) if u.kind == undo]
    assert d.canonical_code() in back


def test_stale_move(fixtures):
    from hardunknots.diagram import StaleMove
    kink = closure(build_tangle_diagram([1]))
    m = available_moves(kink)[0]
    with pytest.raises(StaleMove):
        apply_move(fixtures["H"], m)


# -- hardness -------------------------------------------------------------

@pytest.mark.parametrize("name", ["culprit", "culprit_left", "H", "H_prime", "J", "J_prime", "goeritz"])
def test_hard_fixtures(fixtures, name):
    d = fixtures[name]
    assert is_hard(d)
    assert is_hard(d.mirror())
    assert bracket_up_to_unit(d.adj) == UNKNOT_BRACKET


def test_not_hard(fixtures):
    assert not is_hard(fixtures["decoy"])
    assert not is_hard(sum_diagram([1, 3], [-1, -2]))


def test_mirror(fixtures):
    for d in fixtures.values():
        assert d.mirror().mirror().canonical_code() == d.canonical_code()
        assert d.mirror().signs() == [-s for s in d.signs()]
    # K = N([1,4] - [1,3]) is H with every crossing switched
    assert fixtures["H"].mirror().canonical_code() == fixtures["H_prime"].canonical_code()
    with pytest.raises(IndexError):
        fixtures["H"].switch_crossing(99)


def test_tuck_construction(fixtures):
    base = sum_diagram([1, 3], [-1, -2], flip_b=True)
    t = tuck(base)
    assert base.n_crossings == 7 and t.n_crossings == 10
    assert is_hard(t)
    assert t.canonical_code() == fixtures["culprit"].canonical_code()
    plain = tuck(sum_diagram([1, 3], [-1, -2]))
    assert not is_hard(plain) and "R3" in kinds(plain)
    with pytest.raises(TuckError):
        tuck(closure(build_tangle_diagram([3])))


def test_switching_the_middle_tuck_crossing_alternates(fixtures):
    c = fixtures["culprit"]
    assert not c.is_alternating()
    assert [k for k in range(c.n_crossings) if c.switch_crossing(k).is_alternating()] == [8]


# -- enumeration ----------------------------------------------------------

def test_positive_canonical_cfs():
    got = sorted(list(c.terms) for c in positive_canonical_cfs(4))
    assert got == [[1, 1, 2], [1, 2, 1], [2, 1, 1], [4]]
    for c in positive_canonical_cfs(6):
        assert sum(c.terms) == 6 and len(c.terms) % 2 == 1


def test_enumerate_small():
    assert enumerate_hard_sums(8) == []
    with pytest.raises(ValueError):
        enumerate_hard_sums(0)


def test_enumerate_nine(fixtures):
    hits = enumerate_hard_sums(9)
    labels = sorted(h.label() for h in hits)
    # labels use odd-length forms: [1,2,1] = [1,3] and [1,3,1] = [1,4]
    assert labels == sorted([
        "N([1,2,1] - [1,3,1])", "N([1,2,1] - [1,2,2])", "N([1,3,1] - [1,2,1])",
        "N([1,2,2] - [1,2,1])",
    ])
    for h in hits:
        assert h.diagram.n_crossings == 9
        assert is_convergent_pair(eval_cf(h.a), eval_cf(h.b))
        assert closure_fraction(h.a, -h.b).is_unknot
    codes = {h.diagram.canonical_code() for h in hits}
    assert codes == {fixtures[n].canonical_code() for n in ("H", "H_prime", "J", "J_prime")}
    both = enumerate_hard_sums(9, mirrors=True)
    assert len(both) == 8 and sum(h.mirrored for h in both) == 4


# -- rendering ------------------------------------------------------------

def test_render_trefoil():
    svg = render_svg(closure(build_tangle_diagram([3])), title="N([3])")
    assert svg.startswith("<?xml") and svg.count('class="crossing"') == 3
    assert "<title>N([3])</title>" in svg


def test_render_is_deterministic(fixtures):
    a = render_svg(fixtures["culprit"])
    assert a == render_svg(fixtures["culprit"]) == render_svg(fixtures["culprit"].relabel(
        list(range(10))))
    assert a.count('class="crossing"') == 10
    nums = [float(x) for x in re.findall(r"-?\d+\.\d+", a)]
    assert all(0 <= x <= 400 for x in nums)


def test_render_loops_and_tangles():
    svg = render_svg(PlanarDiagram((), 2))
    assert svg.count('class="loop"') == 2
    assert render_svg(integer_tangle(2)).count('class="crossing"') == 2
    assert render_svg(build_expr("[1/2] + [1]")).count('class="crossing"') == 3
