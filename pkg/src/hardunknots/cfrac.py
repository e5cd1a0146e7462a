"""Exact fractions and continued fractions, with their 2x2 matrix representation.

Fractions carry the formal value ``1/0`` so that tangle arithmetic can pass
through the infinity tangle without special cases.  All integers are Python
ints (arbitrary precision).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Sequence

__all__ = [
    "Fraction",
    "CFrac",
    "Mat2",
    "INF",
    "normalize",
    "parse_fraction",
    "parse_cf",
    "eval_cf",
    "cf_matrix",
    "generating_matrix",
    "palindrome",
    "canonical_cf",
    "is_canonical",
    "expand_cf",
    "convergent",
    "is_convergent_pair",
    "solution_family",
    "base_solution",
    "reduce_signs",
]


@dataclass(frozen=True, order=False)
class Fraction:
    """Reduced ``num/den`` with ``den >= 0``; ``Fraction(1, 0)`` is infinity."""

    num: int
    den: int

    def __post_init__(self):
        if self.num == 0 and self.den == 0:
            raise ValueError("0/0 is not a fraction")
        if self.den < 0 or gcd(self.num, self.den) != 1:
            raise ValueError(f"{self.num}/{self.den} is not normalized; use normalize()")
        if self.den == 0 and self.num != 1:
            raise ValueError("infinity is stored as 1/0")

    @property
    def is_infinite(self) -> bool:
        return self.den == 0

    def __neg__(self) -> "Fraction":
        if self.is_infinite:
            return self
        return Fraction(-self.num, self.den)

    def inverse(self) -> "Fraction":
        return normalize(self.den, self.num)

    def __add__(self, other: "Fraction | int") -> "Fraction":
        other = as_fraction(other)
        if self.is_infinite or other.is_infinite:
            return INF
        return normalize(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __sub__(self, other: "Fraction | int") -> "Fraction":
        return self + (-as_fraction(other))

    def __mul__(self, other: "Fraction | int") -> "Fraction":
        other = as_fraction(other)
        return normalize(self.num * other.num, self.den * other.den)

    def __lt__(self, other: "Fraction") -> bool:
        if self.is_infinite or other.is_infinite:
            raise ValueError("infinity is unordered")
        return self.num * other.den < other.num * self.den

    def __le__(self, other: "Fraction") -> bool:
        return self == other or self < other

    def __str__(self) -> str:
        if self.is_infinite:
            return "inf"
        return f"{self.num}/{self.den}"

    def __repr__(self) -> str:
        return f"Fraction({self.num}, {self.den})"


def normalize(p: int, q: int) -> Fraction:
    """Reduce ``p/q`` to lowest terms with a non-negative denominator.

    Every ``q == 0`` input collapses to ``1/0``.
    """
    if p == 0 and q == 0:
        raise ValueError("0/0 is not a fraction")
    if q == 0:
        return Fraction(1, 0)
    g = gcd(p, q)
    p, q = p // g, q // g
    if q < 0:
        p, q = -p, -q
    return Fraction(p, q)


INF = Fraction(1, 0)
ZERO = Fraction(0, 1)


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x, 1)
    # fractions.Fraction and friends
    return normalize(int(x.numerator), int(x.denominator))


_FRACTION_RE = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*([+-]?\d+)\s*)?$")


def parse_fraction(text: str) -> Fraction:
    """Parse ``p/q``, an integer literal, or ``inf``."""
    s = text.strip()
    if s.lower() in ("inf", "infinity", "1/0"):
        return INF
    m = _FRACTION_RE.match(s)
    if not m:
        raise ValueError(f"not a fraction: {text!r}")
    p = int(m.group(1))
    q = int(m.group(2)) if m.group(2) is not None else 1
    return normalize(p, q)


@dataclass(frozen=True)
class CFrac:
    """A finite continued fraction ``[a1, a2, ..., an]``."""

    terms: tuple[int, ...]

    def __init__(self, terms: Iterable[int]):
        t = tuple(int(a) for a in terms)
        if not t:
            raise ValueError("a continued fraction needs at least one term")
        object.__setattr__(self, "terms", t)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def __getitem__(self, i):
        return self.terms[i]

    def __neg__(self) -> "CFrac":
        return CFrac(-a for a in self.terms)

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.terms) + "]"

    def __repr__(self) -> str:
        return f"CFrac({list(self.terms)})"

    @property
    def value(self) -> Fraction:
        return eval_cf(self)


def _as_cf(cf: "CFrac | Sequence[int]") -> CFrac:
    return cf if isinstance(cf, CFrac) else CFrac(cf)


_CF_RE = re.compile(r"^\s*(-?)\s*\[\s*([^\]]*)\]\s*$")


def parse_cf(text: str) -> CFrac:
    """Parse ``[a1,a2,...,an]``; a leading ``-`` negates every term."""
    m = _CF_RE.match(text)
    if not m:
        raise ValueError(f"not a continued fraction: {text!r}")
    body = m.group(2).strip()
    if not body:
        raise ValueError("empty continued fraction")
    try:
        terms = [int(x) for x in body.split(",")]
    except ValueError:
        raise ValueError(f"continued fraction terms must be integers: {text!r}") from None
    cf = CFrac(terms)
    return -cf if m.group(1) else cf


@dataclass(frozen=True)
class Mat2:
    """Integer matrix ``[[a, b], [c, d]]``."""

    a: int
    b: int
    c: int
    d: int

    def __matmul__(self, o: "Mat2") -> "Mat2":
        return Mat2(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )

    @property
    def det(self) -> int:
        return self.a * self.d - self.b * self.c

    @property
    def T(self) -> "Mat2":
        return Mat2(self.a, self.c, self.b, self.d)

    def swap_rows(self) -> "Mat2":
        return Mat2(self.c, self.d, self.a, self.b)

    def rows(self) -> list[list[int]]:
        return [[self.a, self.b], [self.c, self.d]]

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = Mat2(1, 0, 0, 1)


def generating_matrix(a: int) -> Mat2:
    return Mat2(a, 1, 1, 0)


def eval_cf(cf: "CFrac | Sequence[int]") -> Fraction:
    """Evaluate ``a1 + 1/(a2 + ...)`` exactly, from the innermost term out.

    Intermediate zeros and infinities follow the formal rules
    ``1/0 = inf``, ``1/inf = 0`` and ``a + inf = inf``.
    """
    terms = _as_cf(cf).terms
    x = Fraction(terms[-1], 1)
    for a in reversed(terms[:-1]):
        x = Fraction(a, 1) + x.inverse()
    return x


def cf_matrix(cf: "CFrac | Sequence[int]") -> Mat2:
    """Product ``M(a1) M(a2) ... M(an)`` of generating matrices."""
    m = IDENTITY
    for a in _as_cf(cf).terms:
        m = m @ generating_matrix(a)
    return m


def palindrome(cf: "CFrac | Sequence[int]") -> CFrac:
    return CFrac(reversed(_as_cf(cf).terms))


def convergent(cf: "CFrac | Sequence[int]") -> CFrac:
    """Drop the last term."""
    cf = _as_cf(cf)
    if len(cf) < 2:
        raise ValueError("a one-term continued fraction has no convergent")
    return CFrac(cf.terms[:-1])


def is_convergent_pair(f1: Fraction, f2: Fraction) -> bool:
    """``|P S - Q R| == 1``: one fraction is a convergent of the other."""
    f1, f2 = as_fraction(f1), as_fraction(f2)
    return abs(f1.num * f2.den - f1.den * f2.num) == 1


def expand_cf(f: Fraction) -> CFrac:
    """Euclid's algorithm with all remainders of one sign, padded to odd length.

    Negative fractions expand as the mirror image of their absolute value.
    """
    f = as_fraction(f)
    if f.is_infinite:
        raise ValueError("infinity has no finite continued fraction")
    if f.num < 0:
        return -expand_cf(-f)
    p, q = f.num, f.den
    terms = []
    while q:
        a, r = divmod(p, q)
        terms.append(a)
        p, q = q, r
    if len(terms) % 2 == 0:
        # property 4: [..., an] = [..., an - 1, 1]; an >= 2 here
        terms[-1] -= 1
        terms.append(1)
    return CFrac(terms)


def is_canonical(cf: "CFrac | Sequence[int]") -> bool:
    """Odd length, one sign throughout (after an optional leading 0) and no
    zero terms after the first slot."""
    t = _as_cf(cf).terms
    if len(t) == 1:
        return True
    if len(t) % 2 == 0:
        return False
    rest = t[1:] if t[0] == 0 else t
    return all(a > 0 for a in rest) or all(a < 0 for a in rest)


def _absorb_zeros(t: list[int]) -> list[int] | None:
    """Property 5 and its boundary cases.  Returns None for the value inf."""
    changed = True
    while changed:
        changed = False
        for i in range(1, len(t) - 1):
            if t[i] == 0:
                t = t[: i - 1] + [t[i - 1] + t[i + 1]] + t[i + 2 :]
                changed = True
                break
        if len(t) >= 2 and t[-1] == 0:
            if len(t) == 2:
                return None
            t = t[:-2]
            changed = True
    return t


def _signs_split(t: Sequence[int]) -> int | None:
    """Index i of the first sign change between t[i] and t[i+1] (zeros skipped
    only in the leading slot)."""
    start = 1 if t[0] == 0 and len(t) > 1 else 0
    for i in range(start, len(t) - 1):
        if (t[i] > 0) != (t[i + 1] > 0):
            return i
    return None


def reduce_signs(terms: Sequence[int], max_steps: int = 10_000,
                 merge_tail: bool = True) -> list[int] | None:
    """Rewrite a continued fraction to one sign using the swing identity

        [..., a, -b, c, d, ...] = [..., a - 1, 1, b - 1, -c, -d, ...]

    (and its mirror for a negative-to-positive change) together with zero
    absorption.  The value is preserved at every step.  Returns None when the
    value is infinite; raises RuntimeError if the rewriting fails to settle.
    With ``merge_tail`` a final ``[..., a, 1]`` is folded into ``[..., a + 1]``.
    """
    t = _absorb_zeros(list(terms))
    if t is None:
        return None
    neg = eval_cf(t).num < 0
    if neg:
        t = [-a for a in t]
    for _ in range(max_steps):
        i = _signs_split(t)
        if i is None:
            break
        a, b = t[i], t[i + 1]
        if a > 0:
            t = t[:i] + [a - 1, 1, -b - 1] + [-x for x in t[i + 2 :]]
        else:
            t = t[:i] + [a + 1, -1, 1 - b] + [-x for x in t[i + 2 :]]
        t = _absorb_zeros(t)
        if t is None:
            return None
    else:
        raise RuntimeError(f"sign reduction did not settle for {list(terms)}")
    # [..., a, 1] = [..., a + 1]: keep the shortest form before padding
    while merge_tail and len(t) >= 2 and t[-1] == 1 and t[-2] > 0:
        t = t[:-2] + [t[-2] + 1]
    if merge_tail and len(t) == 2 and t[0] == 0 and t[1] == 1:
        t = [1]
    if neg:
        t = [-a for a in t]
    return t


def canonical_cf(cf: "CFrac | Sequence[int]") -> CFrac:
    """Alternating form: one sign, odd length, same value.

    Computed by the swing/zero rewriting, not by re-expanding the value.
    """
    t = reduce_signs(_as_cf(cf).terms)
    if t is None:
        raise ValueError(f"{_as_cf(cf)} evaluates to inf")
    if len(t) % 2 == 0:
        a = t[-1]
        t = t[:-1] + ([a - 1, 1] if a > 0 else [a + 1, -1])
    return CFrac(t)


def base_solution(P: int, Q: int) -> tuple[int, int]:
    """A pair (r, s) with ``P s - Q r = +-1``, read off the matrix of P/Q."""
    if gcd(P, Q) != 1:
        raise ValueError(f"{P} and {Q} are not coprime")
    f = normalize(P, Q)
    if f.num != P:
        # sign carried by Q; the matrix of -P/-Q works with negated entries
        r, s = base_solution(-P, -Q)
        return -r, -s
    if Q == 0:
        return (1, 0) if P == 1 else (-1, 0)
    m = cf_matrix(expand_cf(f))
    return m.b, m.d


def solution_family(P: int, Q: int, t: int, base: tuple[int, int] | None = None) -> tuple[int, int]:
    """The t-th member ``(r + tP, s + tQ)`` of the solutions of ``P S - Q R = +-1``."""
    if gcd(P, Q) != 1:
        raise ValueError(f"{P} and {Q} are not coprime")
    r, s = base if base is not None else base_solution(P, Q)
    if abs(P * s - Q * r) != 1:
        raise ValueError(f"({r}, {s}) does not solve P s - Q r = +-1")
    return r + t * P, s + t * Q
