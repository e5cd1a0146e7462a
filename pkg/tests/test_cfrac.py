from fractions import Fraction as Q

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import cf_terms, positive_cf
from hardunknots.cfrac import (
    INF, CFrac, Fraction, base_solution, canonical_cf, cf_matrix, convergent, eval_cf,
    expand_cf, generating_matrix, is_canonical, is_convergent_pair, normalize, palindrome,
    parse_cf, parse_fraction, solution_family,
)


def oracle_eval(terms):
    """Right-to-left evaluation with the stdlib Fraction; None stands for 1/0."""
    x = Q(terms[-1])
    for a in reversed(terms[:-1]):
        if x is None:
            x = Q(a)  # a + 1/inf
        elif x == 0:
            x = None
        else:
            x = a + 1 / x
    return x


def ours_as_q(f: Fraction):
    return None if f.is_infinite else Q(f.num, f.den)


def fib(n):
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


# -- Fraction -------------------------------------------------------------

def test_normalize_sign_and_infinity():
    assert normalize(6, -4) == Fraction(-3, 2)
    assert normalize(-5, 0) == INF
    assert str(INF) == "inf"
    with pytest.raises(ValueError):
        normalize(0, 0)
    with pytest.raises(ValueError):
        Fraction(2, 4)


def test_parse_round_trip():
    for text in ["7/5", "-3/4", "inf", "0", "12"]:
        assert str(parse_fraction(text)) in (text, text + "/1")
    assert parse_fraction("-6/4") == Fraction(-3, 2)
    assert str(parse_cf(" [ 1, -2 ,3]")) == "[1,-2,3]"
    assert parse_cf(str(CFrac([0, -1, -3]))) == CFrac([0, -1, -3])


@pytest.mark.parametrize("text", ["[1,,2]", "1,2", "[]", "[a]"])
def test_parse_cf_rejects(text):
    with pytest.raises(ValueError):
        parse_cf(text)


# -- evaluation and matrices ---------------------------------------------

@pytest.mark.parametrize("terms, value", [
    ([2, -2, 3], (7, 5)),
    ([2, -2], (3, 2)),
    ([1, 1, 1], (3, 2)),
    ([1, 2, 3], (10, 7)),
    ([2, 3, 4], (30, 13)),
    ([4, 3, 2], (30, 7)),
    ([1, 2, 4], (13, 9)),
    ([0, -1, -3], (-3, 4)),
])
def test_eval_known_values(terms, value):
    assert eval_cf(terms) == normalize(*value)


def test_interior_zero_uses_formal_infinity():
    # [a, 0, b] collapses to [a + b]
    assert eval_cf([1, 0, 2]) == normalize(3, 1)
    assert eval_cf([0, 0]) == INF


def test_matrix_examples():
    assert cf_matrix([1, 2, 3]).rows() == [[10, 3], [7, 2]]
    assert cf_matrix([5]).rows() == [[5, 1], [1, 0]]
    assert generating_matrix(-2).rows() == [[-2, 1], [1, 0]]
    for n in range(2, 20):
        assert cf_matrix([1] * n).rows() == [[fib(n + 1), fib(n)], [fib(n), fib(n - 1)]]


@given(cf_terms())
def test_eval_matches_oracle(terms):
    assert ours_as_q(eval_cf(terms)) == oracle_eval(terms)


@given(cf_terms())
def test_matrix_determinant_and_columns(terms):
    m = cf_matrix(terms)
    assert m.det == (-1) ** len(terms)
    assert normalize(m.a, m.c) == eval_cf(terms)
    if len(terms) > 1:
        assert normalize(m.b, m.d) == eval_cf(terms[:-1])


@given(cf_terms(min_size=2))
def test_truncation_law(terms):
    m = cf_matrix(terms)
    P, Qn, R, S = m.a, m.c, m.b, m.d
    if Qn == 0 or S == 0:
        return
    diff = Q(P, Qn) - Q(R, S)
    assert diff == Q((-1) ** len(terms), Qn * S)
    assert ours_as_q(eval_cf(convergent(terms))) == Q(R, S)


@given(st.integers(1, 40))
def test_fibonacci_ratio(n):
    assert eval_cf([1] * n) == normalize(fib(n + 1), fib(n))


# -- palindromes ----------------------------------------------------------

def test_palindrome_examples():
    assert palindrome([2, 3, 4]) == CFrac([4, 3, 2])
    assert (7 * 13) % 30 == 1
    assert palindrome([6]) == CFrac([6])
    p, q = eval_cf([1, 2]), eval_cf(palindrome([1, 2]))
    assert (p, q) == (normalize(3, 2), normalize(3, 1))


@given(cf_terms())
def test_palindrome_congruence(terms):
    f, g = eval_cf(terms), eval_cf(palindrome(terms))
    if f.is_infinite or g.is_infinite or f.num == 0:
        return
    assert abs(f.num) == abs(g.num)
    P = abs(f.num)
    # QQ' = (-1)^(n+1) mod P, with signs read off the matrix entries
    m = cf_matrix(terms)
    assert (m.c * m.b - (-1) ** (len(terms) + 1)) % P == 0


# -- canonical forms ------------------------------------------------------

@pytest.mark.parametrize("terms, canon", [
    ([2, -2, 3], [1, 2, 2]),
    ([2, -2], [1, 1, 1]),
    ([3], [3]),
    ([1, 3], [1, 2, 1]),
    ([0, -1, -3], [0, -1, -3]),
])
def test_canonical_examples(terms, canon):
    assert canonical_cf(terms) == CFrac(canon)
    assert is_canonical(canon)


def test_is_canonical_shape():
    assert not is_canonical([1, 3])
    assert not is_canonical([1, -2, 3])
    assert not is_canonical([1, 0, 2])


@given(cf_terms())
def test_canonical_preserves_value(terms):
    f = eval_cf(terms)
    if f.is_infinite:
        return
    c = canonical_cf(terms)
    assert eval_cf(c) == f
    assert is_canonical(c)
    assert canonical_cf(c) == c


@pytest.mark.parametrize("frac, terms", [((7, 5), [1, 2, 2]), ((-3, 4), [0, -1, -3]), ((3, 1), [3])])
def test_expand_examples(frac, terms):
    assert expand_cf(normalize(*frac)) == CFrac(terms)


def test_expand_rejects_infinity():
    with pytest.raises(ValueError):
        expand_cf(INF)


@given(st.integers(-500, 500), st.integers(1, 500))
def test_expand_eval_round_trip(p, q):
    f = normalize(p, q)
    cf = expand_cf(f)
    assert eval_cf(cf) == f
    assert is_canonical(cf)
    assert expand_cf(eval_cf(cf)) == cf
    signs = {x > 0 for x in cf.terms[1:] if x} | ({cf[0] > 0} if cf[0] else set())
    assert len(signs) <= 1


# -- convergents and solutions --------------------------------------------

def test_convergent_examples():
    assert convergent([1, 2, 3]) == CFrac([1, 2])
    assert convergent([1, 2, 4]) == CFrac([1, 2])
    assert convergent([4, 7]) == CFrac([4])
    with pytest.raises(ValueError):
        convergent([3])


def test_convergent_pairs():
    assert is_convergent_pair(normalize(13, 9), normalize(10, 7))
    assert is_convergent_pair(normalize(5, 4), normalize(4, 3))
    assert not is_convergent_pair(normalize(3, 2), normalize(3, 2))


def test_solution_family():
    assert base_solution(10, 7) == (3, 2)
    assert solution_family(10, 7, 1) == (13, 9)
    assert 10 * 9 - 7 * 13 == -1
    assert solution_family(10, 7, 0) == (3, 2)
    # the base solution is read off the odd-length expansion [1,3,1] of 5/4
    r, s = base_solution(5, 4)
    assert abs(5 * s - 4 * r) == 1
    assert 5 * 1 - 4 * 1 == 1  # the [1,4] matrix gives the other sign
    with pytest.raises(ValueError):
        solution_family(4, 2, 0)


@given(st.integers(-200, 200), st.integers(1, 200), st.integers(-50, 50))
def test_solution_family_determinant(P, Qd, t):
    from math import gcd
    if gcd(P, Qd) != 1:
        return
    r, s = base_solution(P, Qd)
    R, S = solution_family(P, Qd, t)
    assert P * S - Qd * R == P * s - Qd * r
    assert abs(P * s - Qd * r) == 1
