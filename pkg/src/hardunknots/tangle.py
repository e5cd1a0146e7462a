"""Rational tangle expressions and the classification of their closures.

Closures of a sum ``A + B`` of two rational tangles are rational knots or
links; their fraction comes from the matrix formula

    M # N = M^T N',   F = P S + Q R,   G = Q' S + U R,

and ``N(A + B)`` is the unknot exactly when ``|F| = 1``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .cfrac import (
    INF,
    ZERO,
    CFrac,
    Fraction,
    Mat2,
    as_fraction,
    cf_matrix,
    eval_cf,
    expand_cf,
    normalize,
)

__all__ = [
    "TangleExpr", "IntegerTangle", "InfinityTangle", "CFTangle", "FractionTangle",
    "Mirror", "Rotate", "Invert", "HFlip", "VFlip", "Sum", "Product",
    "TangleSyntaxError", "NonRational", "ClosureReport",
    "parse_tangle", "fraction_of", "is_rational", "sharp", "concat",
    "closure_fraction", "classify_fraction", "classify_closure", "is_unknot_sum",
    "schubert_equivalent", "schubert_normal_form", "inverse_pair_dual",
    "collapse_identity", "numerator_closure_fraction", "sum_closure_fraction",
]


class TangleSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        pointer = ""
        if text:
            pointer = f"\n  {text}\n  {' ' * position}^"
        super().__init__(f"{message} at position {position}{pointer}")


class NonRational(ValueError):
    """The expression is not known to denote a rational tangle."""


# -- expression tree ------------------------------------------------------

class TangleExpr:
    """Base class of tangle expression nodes (all immutable)."""

    def __add__(self, other: "TangleExpr") -> "Sum":
        return Sum(self, other)

    def __sub__(self, other: "TangleExpr") -> "Sum":
        return Sum(self, Mirror(other))

    def __mul__(self, other: "TangleExpr") -> "Product":
        return Product(self, other)

    def __neg__(self) -> "Mirror":
        return Mirror(self)


@dataclass(frozen=True)
class IntegerTangle(TangleExpr):
    n: int

    def __str__(self):
        return f"[{self.n}]"


@dataclass(frozen=True)
class InfinityTangle(TangleExpr):
    def __str__(self):
        return "inf"


@dataclass(frozen=True)
class CFTangle(TangleExpr):
    """Standard form ``[a1] + 1/([a2] + 1/(... + 1/[an]))``."""

    cf: CFrac

    def __str__(self):
        return str(self.cf)


@dataclass(frozen=True)
class FractionTangle(TangleExpr):
    """The rational tangle ``[p/q]``; built from ``expand_cf(p/q)``."""

    value: Fraction

    def __str__(self):
        return "inf" if self.value.is_infinite else f"[{self.value}]"


@dataclass(frozen=True)
class Mirror(TangleExpr):
    t: TangleExpr

    def __str__(self):
        return f"-{_wrap(self.t)}"


@dataclass(frozen=True)
class Rotate(TangleExpr):
    t: TangleExpr

    def __str__(self):
        return f"rot({self.t})"


@dataclass(frozen=True)
class Invert(TangleExpr):
    """``1/T``, the same tangle as ``Mirror(Rotate(T))``."""

    t: TangleExpr

    def __str__(self):
        return f"1/{_wrap(self.t)}"

    def expand(self) -> TangleExpr:
        return Mirror(Rotate(self.t))


@dataclass(frozen=True)
class HFlip(TangleExpr):
    t: TangleExpr

    def __str__(self):
        return f"hflip({self.t})"


@dataclass(frozen=True)
class VFlip(TangleExpr):
    t: TangleExpr

    def __str__(self):
        return f"vflip({self.t})"


@dataclass(frozen=True)
class Sum(TangleExpr):
    left: TangleExpr
    right: TangleExpr

    def __str__(self):
        if isinstance(self.right, Mirror):
            return f"{self.left} - {_wrap(self.right.t)}"
        return f"{self.left} + {self.right}"


@dataclass(frozen=True)
class Product(TangleExpr):
    left: TangleExpr
    right: TangleExpr

    def __str__(self):
        return f"{_wrap(self.left)}*{_wrap(self.right)}"


def _wrap(t: TangleExpr) -> str:
    if isinstance(t, (Sum, Product)):
        return f"({t})"
    return str(t)


# -- parser ---------------------------------------------------------------

_FUNCS = {"rot": Rotate, "hflip": HFlip, "vflip": VFlip, "mirror": Mirror, "inv": Invert}


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = self._lex(text)
        self.i = 0

    def _lex(self, s: str):
        toks = []
        i = 0
        while i < len(s):
            c = s[i]
            if c.isspace():
                i += 1
            elif c.isdigit():
                j = i
                while j < len(s) and s[j].isdigit():
                    j += 1
                toks.append(("int", int(s[i:j]), i))
                i = j
            elif c.isalpha():
                j = i
                while j < len(s) and s[j].isalpha():
                    j += 1
                toks.append(("name", s[i:j].lower(), i))
                i = j
            elif c in "[](),+-*/":
                toks.append((c, c, i))
                i += 1
            else:
                raise TangleSyntaxError(f"unexpected character {c!r}", i, s)
        toks.append(("end", None, len(s)))
        return toks

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            got = "end of input" if tok[0] == "end" else repr(tok[1])
            raise TangleSyntaxError(f"expected {want}, found {got}", tok[2], self.text)
        self.i += 1
        return tok

    def parse(self) -> TangleExpr:
        if self.peek()[0] == "end":
            raise TangleSyntaxError("empty input", 0, self.text)
        e = self.expr()
        tok = self.peek()
        if tok[0] == ")":
            raise TangleSyntaxError("unbalanced ')'", tok[2], self.text)
        self.take("end")
        return e

    def expr(self) -> TangleExpr:
        e = self.term()
        while self.peek()[0] in "+-":
            op = self.take()[0]
            rhs = self.term()
            e = Sum(e, rhs) if op == "+" else Sum(e, Mirror(rhs))
        return e

    def term(self) -> TangleExpr:
        e = self.unary()
        if self.peek()[0] == "*":
            self.take()
            e = Product(e, self.unary())
            tok = self.peek()
            if tok[0] == "*":
                raise TangleSyntaxError("chained '*' needs parentheses", tok[2], self.text)
        return e

    def unary(self) -> TangleExpr:
        kind, val, pos = self.peek()
        if kind == "-":
            self.take()
            return Mirror(self.unary())
        if kind == "int":
            self.take()
            if val != 1 or self.peek()[0] != "/":
                raise TangleSyntaxError("bare integers must be written [n] (only 1/T is allowed)", pos, self.text)
            self.take("/")
            return Invert(self.unary())
        return self.atom()

    def atom(self) -> TangleExpr:
        kind, val, pos = self.peek()
        if kind == "(":
            self.take()
            e = self.expr()
            if self.peek()[0] != ")":
                raise TangleSyntaxError("unbalanced '('", pos, self.text)
            self.take(")")
            return e
        if kind == "[":
            return self.bracket()
        if kind == "name":
            self.take()
            if val in ("inf", "infinity"):
                return InfinityTangle()
            if val not in _FUNCS:
                raise TangleSyntaxError(f"unknown name {val!r}", pos, self.text)
            open_pos = self.peek()[2]
            self.take("(")
            e = self.expr()
            if self.peek()[0] != ")":
                raise TangleSyntaxError("unbalanced '('", open_pos, self.text)
            self.take(")")
            return _FUNCS[val](e)
        if kind == "end":
            raise TangleSyntaxError("unexpected end of input", pos, self.text)
        raise TangleSyntaxError(f"unexpected {val!r}", pos, self.text)

    def signed_int(self) -> int:
        sign = 1
        while self.peek()[0] in "+-":
            if self.take()[0] == "-":
                sign = -sign
        return sign * self.take("int")[1]

    def bracket(self) -> TangleExpr:
        open_pos = self.take("[")[2]
        if self.peek()[0] == "name" and self.peek()[1] in ("inf", "infinity"):
            self.take()
            self._close(open_pos)
            return InfinityTangle()
        first = self.signed_int()
        if self.peek()[0] == "/":
            self.take()
            den = self.signed_int()
            self._close(open_pos)
            if first == 0 and den == 0:
                raise TangleSyntaxError("0/0 is not a fraction", open_pos, self.text)
            return FractionTangle(normalize(first, den))
        terms = [first]
        while self.peek()[0] == ",":
            self.take()
            terms.append(self.signed_int())
        self._close(open_pos)
        if len(terms) == 1:
            return IntegerTangle(terms[0])
        return CFTangle(CFrac(terms))

    def _close(self, open_pos: int):
        if self.peek()[0] != "]":
            tok = self.peek()
            if tok[0] == "end":
                raise TangleSyntaxError("unbalanced '['", open_pos, self.text)
            raise TangleSyntaxError(f"expected ']', found {tok[1]!r}", tok[2], self.text)
        self.take()


def parse_tangle(text: str) -> TangleExpr:
    """Parse Conway-style tangle notation into a TangleExpr."""
    return _Parser(text).parse()


# -- fractions ------------------------------------------------------------

def _inv(f: Fraction) -> Fraction:
    return f.inverse()


def _integral(f: Fraction) -> bool:
    return f.is_infinite or f.den == 1


def fraction_of(expr: TangleExpr, strict: bool = False) -> Fraction:
    """Fraction of a tangle expression.

    Sums are additive for any tangles.  Products are only evaluated when one
    factor has fraction ``1/n`` (a vertical twist), which keeps rational
    tangles rational; anything else raises NonRational.  With ``strict`` the
    same restriction applies to sums (one summand must be integral).
    """
    if isinstance(expr, IntegerTangle):
        return Fraction(expr.n, 1)
    if isinstance(expr, InfinityTangle):
        return INF
    if isinstance(expr, CFTangle):
        return eval_cf(expr.cf)
    if isinstance(expr, FractionTangle):
        return expr.value
    if isinstance(expr, Mirror):
        return -fraction_of(expr.t, strict)
    if isinstance(expr, Invert):
        return _inv(fraction_of(expr.t, strict))
    if isinstance(expr, Rotate):
        return -_inv(fraction_of(expr.t, strict))
    if isinstance(expr, (HFlip, VFlip)):
        return fraction_of(expr.t, strict)
    if isinstance(expr, Sum):
        a, b = fraction_of(expr.left, strict), fraction_of(expr.right, strict)
        if strict and not (_integral(a) or _integral(b)):
            raise NonRational(f"{expr}: neither summand is an integer tangle")
        return a + b
    if isinstance(expr, Product):
        a, b = fraction_of(expr.left, strict), fraction_of(expr.right, strict)
        if not (_integral(_inv(a)) or _integral(_inv(b))):
            raise NonRational(f"{expr}: neither factor is a vertical twist 1/[n]")
        return _inv(_inv(a) + _inv(b))
    raise TypeError(f"not a tangle expression: {expr!r}")


def is_rational(expr: TangleExpr) -> bool:
    try:
        fraction_of(expr, strict=True)
    except NonRational:
        return False
    return True


# -- continued fraction operations -----------------------------------------

def sharp(a: CFrac, b: CFrac) -> CFrac:
    """``[an, ..., a2, a1 + b1, b2, ..., bm]``."""
    a, b = CFrac(a), CFrac(b)
    return CFrac(tuple(reversed(a.terms[1:])) + (a[0] + b[0],) + b.terms[1:])


def concat(a: CFrac, b: CFrac) -> CFrac:
    return CFrac(tuple(CFrac(a).terms) + tuple(CFrac(b).terms))


def sum_closure_fraction(ma: Mat2, mb: Mat2) -> Fraction:
    """F/G read off ``M^T N'`` for the matrices of the two summands."""
    m = ma.T @ mb.swap_rows()
    return normalize(m.a, m.c)


# -- classification ------------------------------------------------------

@dataclass(frozen=True)
class ClosureReport:
    closure_fraction: Fraction
    is_unknot: bool
    knot_name: Optional[str]
    chirality_note: str
    F: int = field(default=0, compare=False)
    G: int = field(default=0, compare=False)

    def to_dict(self) -> dict:
        return {
            "closure_fraction": str(self.closure_fraction),
            "is_unknot": self.is_unknot,
            "knot_name": self.knot_name,
            "chirality_note": self.chirality_note,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_text(self) -> str:
        d = self.to_dict()
        lines = []
        for k in ("closure_fraction", "is_unknot", "knot_name", "chirality_note"):
            v = d[k]
            if isinstance(v, bool):
                v = "true" if v else "false"
            lines.append(f"{k}={'' if v is None else v}")
        return "\n".join(lines)


def schubert_normal_form(f: Fraction) -> tuple[int, int]:
    """``(p, q)`` with ``p >= 0`` and ``q`` reduced mod p, ``0 <= q < p``."""
    f = as_fraction(f)
    p, q = f.num, f.den
    if f.is_infinite:
        return 1, 0
    if p < 0:
        p, q = -p, -q
    if p == 0:
        return 0, 1
    return p, q % p


def _class_rep(p: int, q: int) -> int:
    """Least representative of q under ``q ~ q^{-1} mod p``."""
    q %= p
    return min(q, pow(q, -1, p)) if p > 1 else 0


def classify_fraction(f: Fraction) -> ClosureReport:
    """Classify the rational knot or link ``N([f])``."""
    f = as_fraction(f)
    p, q = schubert_normal_form(f)
    note = ""
    if p == 0:
        name = "unlink of 2 components"
        note = "amphichiral"
    elif p == 1:
        name = "unknot"
        note = "amphichiral"
    else:
        rep, mrep = _class_rep(p, q), _class_rep(p, -q)
        kind = "knot" if p % 2 else "link"
        if p == 2:
            name = "Hopf link"
        elif p == 3:
            name = "trefoil"
        elif p == 5 and rep == 2:
            name = "figure-eight"
        elif rep == 1 or mrep == 1:
            name = f"torus {kind} T(2,{p})"
        else:
            name = f"rational {kind} {p}/{min(rep, mrep)}"
        if rep == mrep:
            note = "amphichiral"
        elif rep < mrep:
            note = f"chiral; Schubert form {p}/{rep}"
        else:
            note = f"chiral; mirror of Schubert form {p}/{mrep}"
    return ClosureReport(f, p == 1, name, note, F=f.num, G=f.den)


def classify_closure(f: Fraction, mode: str = "numerator") -> ClosureReport:
    """Classify N(T) or D(T) for a rational tangle of fraction f.

    ``D(T) = N(T^rot)`` and ``F(T^rot) = -1/F(T)``.
    """
    f = as_fraction(f)
    if mode == "numerator":
        return classify_fraction(f)
    if mode == "denominator":
        return classify_fraction(-f.inverse())
    raise ValueError(f"unknown closure mode {mode!r}")


def numerator_closure_fraction(f1: Fraction, f2: Fraction) -> Fraction:
    """F/G of ``N([f1] + [f2])`` from expansions of the two fractions."""
    f1, f2 = as_fraction(f1), as_fraction(f2)
    return sum_closure_fraction(_matrix_of(f1), _matrix_of(f2))


def _matrix_of(f: Fraction) -> Mat2:
    if f.is_infinite:
        # the empty product: first column (1, 0)
        return Mat2(1, 0, 0, 1)
    return cf_matrix(expand_cf(f))


def closure_fraction(a: CFrac, b: CFrac) -> ClosureReport:
    """Classify ``N(A + B)`` from the matrices of the two continued fractions."""
    return classify_fraction(sum_closure_fraction(cf_matrix(CFrac(a)), cf_matrix(CFrac(b))))


def is_unknot_sum(f1: Fraction, f2: Fraction) -> bool:
    """Unknot test for a sum of two rational tangles: ``|P S + Q R| = 1``."""
    f1, f2 = as_fraction(f1), as_fraction(f2)
    return abs(f1.num * f2.den + f1.den * f2.num) == 1


def schubert_equivalent(f1: Fraction, f2: Fraction) -> bool:
    """``p = p'`` and ``q = q'`` or ``q q' = 1`` mod p, after making p >= 0."""
    p1, q1 = schubert_normal_form(f1)
    p2, q2 = schubert_normal_form(f2)
    if p1 != p2:
        return False
    if p1 <= 1:
        return True
    return q1 == q2 or (q1 * q2) % p1 == 1


def inverse_pair_dual(f1: Fraction, f2: Fraction) -> tuple[Fraction, Fraction]:
    """``(1/f1, 1/f2)``: ``N(1/A + 1/B)`` is the mirror of ``N(A + B)``."""
    return as_fraction(f1).inverse(), as_fraction(f2).inverse()


def _eval_terms(terms: Sequence[Fraction]) -> Fraction:
    x = terms[-1]
    for a in reversed(terms[:-1]):
        x = a + x.inverse()
    return x


COLLAPSE_KINDS = ("denominator", "numerator", "split")


def collapse_identity(prefix: CFrac, kind: str, T: TangleExpr, S: Optional[TangleExpr] = None,
                      check: bool = True) -> ClosureReport:
    """Classify the collapse of

        denominator:  N([a1..a(n-1), an + T] - [a1..a(n-1)])      = D(T)
        numerator:    N([a1..a(n-1), an + T] - [a1..an])          = N(T)
        split:        N([a1..a(n-1), an + T] - [a1..a(n-1), an - S]) = N(T + S)

    ``prefix`` is ``[a1, ..., an]``; for ``n = 1`` the empty subtrahend is
    the tangle ``[inf]``.  With ``check`` the assembled sum is classified
    independently by its closure fraction and compared with the identity.
    """
    prefix = CFrac(prefix)
    if kind not in COLLAPSE_KINDS:
        raise ValueError(f"kind must be one of {COLLAPSE_KINDS}")
    if kind == "split" and S is None:
        raise ValueError("the split identity needs S")
    if not is_rational(T) or (S is not None and not is_rational(S)):
        raise NonRational("collapse identities are only computed for rational T and S")
    ft = fraction_of(T)
    if kind == "denominator":
        expected = classify_closure(ft, "denominator")
    elif kind == "numerator":
        expected = classify_closure(ft, "numerator")
    else:
        # N(T + S) of two rational tangles is read off their matrices, not F(T) + F(S)
        expected = classify_fraction(numerator_closure_fraction(ft, fraction_of(S)))
    if check:
        head = [Fraction(a, 1) for a in prefix.terms[:-1]]
        last = Fraction(prefix[-1], 1)
        minuend = _eval_terms(head + [last + ft])
        if kind == "denominator":
            sub = _eval_terms(head) if head else INF
        elif kind == "numerator":
            sub = eval_cf(prefix)
        else:
            sub = _eval_terms(head + [last - fraction_of(S)])
        got = classify_fraction(numerator_closure_fraction(minuend, -sub))
        if not (schubert_equivalent(got.closure_fraction, expected.closure_fraction)
                or schubert_equivalent(got.closure_fraction, -expected.closure_fraction)):
            raise AssertionError(
                f"collapse {kind} failed: sum gives {got.closure_fraction}, identity gives "
                f"{expected.closure_fraction}")
    return expected
