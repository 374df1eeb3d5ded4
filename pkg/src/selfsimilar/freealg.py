"""Words over {x, y}, run-length encoding, and noncommutative polynomials.

A word is a plain ``str`` over the characters ``"x"`` and ``"y"``; the empty
string is the identity of the free monoid.  :class:`NcPolynomial` is an
element of the free algebra ``K<x, y>`` for ``K`` either Q or a prime field.

Terms are kept in graded-lexicographic order (shorter words first, ties
broken with x < y), which makes the printed form canonical.
"""

from __future__ import annotations

import enum
import re
from fractions import Fraction
from itertools import groupby, product
from typing import Iterable, Mapping, Sequence, Union

from .arith.fields import QQ, Field, FieldMismatchError, PrimeField

Word = str

#: degree of the zero polynomial; compares below every integer
NEG_INF = float("-inf")


class Generator(str, enum.Enum):
    X = "x"
    Y = "y"

    def __str__(self):
        return self.value


def check_word(w: str) -> Word:
    if w.strip("xy"):
        raise ValueError(f"not a word over {{x, y}}: {w!r}")
    return w


def word_key(w: Word) -> tuple[int, str]:
    return (len(w), w)


# ---------- run-length encoding

def rle_encode(w: Word) -> list[tuple[Generator, int]]:
    """Maximal runs of ``w`` as ``(generator, length)`` pairs."""
    return [(Generator(ch), len(list(run))) for ch, run in groupby(w)]


def rle_decode(runs: Iterable[tuple[Union[Generator, str], int]]) -> Word:
    out = []
    prev = None
    for g, n in runs:
        g = Generator(g)
        if n < 1:
            raise ValueError(f"run length must be positive, got {n}")
        if g == prev:
            raise ValueError("adjacent runs must use distinct generators")
        out.append(g.value * n)
        prev = g
    return "".join(out)


def format_word(w: Word) -> str:
    """``"xxyxx"`` -> ``"x^2*y*x^2"``; the empty word prints as ``"1"``."""
    if not w:
        return "1"
    parts = []
    for g, n in rle_encode(w):
        parts.append(g.value if n == 1 else f"{g.value}^{n}")
    return "*".join(parts)


# ---------- polynomials

class NcPolynomial:
    """Immutable element of ``K<x, y>``.

    ``terms`` maps words to nonzero coefficients.  Arithmetic operators
    accept other polynomials over the same field or bare scalars.
    """

    __slots__ = ("field", "terms", "_hash")

    def __init__(self, terms: Mapping[Word, object] = None, field: Field = QQ, *, _raw=False):
        self.field = field
        if _raw:
            self.terms = terms
        else:
            clean = {}
            for w, c in (terms or {}).items():
                c = field.coerce(c)
                if c:
                    clean[check_word(w)] = c
            self.terms = clean
        self._hash = None

    # construction helpers
    @classmethod
    def zero(cls, field: Field = QQ) -> NcPolynomial:
        return cls({}, field, _raw=True)

    @classmethod
    def one(cls, field: Field = QQ) -> NcPolynomial:
        return cls({"": field.one}, field, _raw=True)

    @classmethod
    def scalar(cls, c, field: Field = QQ) -> NcPolynomial:
        return cls({"": c}, field)

    @classmethod
    def monomial(cls, w: Word, c=1, field: Field = QQ) -> NcPolynomial:
        return cls({w: c}, field)

    @classmethod
    def gen(cls, g: Union[Generator, str], field: Field = QQ) -> NcPolynomial:
        return cls.monomial(Generator(g).value, 1, field)

    @classmethod
    def parse(cls, text: str, field: Field = QQ) -> NcPolynomial:
        return parse_poly(text, field)

    def _from_acc(self, acc: dict) -> NcPolynomial:
        if isinstance(self.field, PrimeField):
            p = self.field.p
            acc = {w: c % p for w, c in acc.items() if c % p}
        else:
            acc = {w: c for w, c in acc.items() if c}
        return NcPolynomial(acc, self.field, _raw=True)

    def _lift(self, other) -> NcPolynomial:
        if isinstance(other, NcPolynomial):
            if other.field != self.field:
                raise FieldMismatchError(f"{self.field} vs {other.field}")
            return other
        if isinstance(other, (int, Fraction)):
            return NcPolynomial.scalar(other, self.field)
        return NotImplemented

    # queries
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_scalar(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and "" in self.terms)

    def is_monomial(self) -> bool:
        """A single term ``c * w`` with ``c`` nonzero."""
        return len(self.terms) == 1

    def constant_term(self):
        return self.terms.get("", self.field.zero)

    def coefficient(self, w: Word):
        return self.terms.get(w, self.field.zero)

    def sorted_terms(self) -> list[tuple[Word, object]]:
        return sorted(self.terms.items(), key=lambda t: word_key(t[0]))

    def degree(self):
        """Longest word length, or :data:`NEG_INF` for zero."""
        if not self.terms:
            return NEG_INF
        return max(len(w) for w in self.terms)

    def eval_ones(self):
        """Image under ``x, y -> 1``: the sum of the coefficients."""
        total = sum(self.terms.values(), self.field.zero)
        return self.field.coerce(total)

    # ring structure
    def __eq__(self, other):
        if isinstance(other, NcPolynomial):
            return self.field == other.field and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == NcPolynomial.scalar(other, self.field)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.field, frozenset(self.terms.items())))
        return self._hash

    def __neg__(self) -> NcPolynomial:
        return self._from_acc({w: -c for w, c in self.terms.items()})

    def __add__(self, other) -> NcPolynomial:
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        acc = dict(self.terms)
        for w, c in other.terms.items():
            acc[w] = acc.get(w, 0) + c
        return self._from_acc(acc)

    __radd__ = __add__

    def __sub__(self, other) -> NcPolynomial:
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> NcPolynomial:
        return self._lift(other) - self

    def __mul__(self, other) -> NcPolynomial:
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        acc: dict = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                acc[w] = acc.get(w, 0) + c1 * c2
        return self._from_acc(acc)

    def __rmul__(self, other) -> NcPolynomial:
        # scalars commute with everything
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self

    def __pow__(self, e: int) -> NcPolynomial:
        if e < 0:
            raise ValueError("negative exponent")
        result, base = NcPolynomial.one(self.field), self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def scale(self, c) -> NcPolynomial:
        c = self.field.coerce(c)
        return self._from_acc({w: c * v for w, v in self.terms.items()})

    def map_words(self, f) -> NcPolynomial:
        """Apply a monoid morphism given on words; coefficients of
        colliding images are added."""
        acc: dict = {}
        for w, c in self.terms.items():
            v = f(w)
            acc[v] = acc.get(v, 0) + c
        return self._from_acc(acc)

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"NcPolynomial({format_poly(self)!r}, {self.field})"


def poly_add(p: NcPolynomial, q: NcPolynomial) -> NcPolynomial:
    return p + q


def poly_mul(p: NcPolynomial, q: NcPolynomial) -> NcPolynomial:
    return p * q


def poly_scale(c, p: NcPolynomial) -> NcPolynomial:
    return p.scale(c)


def eval_ones(p: NcPolynomial):
    return p.eval_ones()


def degree(p: NcPolynomial):
    return p.degree()


# ---------- substitutions

def substitute(p: NcPolynomial, image_x: NcPolynomial, image_y: NcPolynomial) -> NcPolynomial:
    """Image of ``p`` under the algebra endomorphism ``x -> image_x,
    y -> image_y``."""
    field = p.field
    if image_x.field != field or image_y.field != field:
        raise FieldMismatchError("substitution images must share the field of p")
    images = {"x": image_x, "y": image_y}
    cache: dict[tuple[str, int], NcPolynomial] = {}
    acc: dict = {}
    for w, c in p.terms.items():
        term = NcPolynomial.scalar(c, field)
        for g, n in rle_encode(w):
            key = (g.value, n)
            if key not in cache:
                cache[key] = images[g.value] ** n
            term = term * cache[key]
        for v, d in term.terms.items():
            acc[v] = acc.get(v, 0) + d
    return p._from_acc(acc)


_SWAP = str.maketrans("xy", "yx")


def swap_xy(p: NcPolynomial) -> NcPolynomial:
    """``p`` with x and y exchanged."""
    return NcPolynomial({w.translate(_SWAP): c for w, c in p.terms.items()}, p.field, _raw=True)


def _double(w: Word) -> Word:
    return "".join("xy" if ch == "x" else "yx" for ch in w)


def subst_xy_yx(p: NcPolynomial) -> NcPolynomial:
    """Simultaneous substitution ``x -> xy, y -> yx``."""
    # the Thue-Morse morphism is injective, so no coefficients collide
    return NcPolynomial({_double(w): c for w, c in p.terms.items()}, p.field, _raw=True)


# ---------- text form

class PolyParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


_WS = re.compile(r"\s*")
_UINT = re.compile(r"\d+")


class _Parser:
    def __init__(self, text: str, field: Field):
        self.text = text
        self.field = field
        self.pos = 0

    def error(self, msg: str):
        raise PolyParseError(msg, self.text, self.pos)

    def skip_ws(self):
        self.pos = _WS.match(self.text, self.pos).end()

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def uint(self) -> int:
        m = _UINT.match(self.text, self.pos)
        if not m:
            self.error("expected an unsigned integer")
        self.pos = m.end()
        return int(m.group())

    def coeff(self):
        start = self.pos
        num = self.uint()
        self.skip_ws()
        if self.peek() == "/":
            if self.field != QQ:
                self.pos = start
                self.error(f"fractional coefficient is not allowed over {self.field}")
            self.pos += 1
            self.skip_ws()
            den = self.uint()
            if den == 0:
                self.pos = start
                self.error("zero denominator")
            return Fraction(num, den)
        return num

    def factor(self) -> str:
        g = self.peek()
        self.pos += 1
        self.skip_ws()
        n = 1
        if self.peek() == "^":
            self.pos += 1
            self.skip_ws()
            n = self.uint()
            self.skip_ws()
        return g * n

    def term(self):
        start = self.pos
        c = 1
        if self.peek().isdigit():
            c = self.coeff()
            self.skip_ws()
        word = []
        while True:
            save = self.pos
            if self.peek() == "*":
                self.pos += 1
                self.skip_ws()
                if self.peek() not in ("x", "y"):
                    self.error("expected x or y after '*'")
            if self.peek() in ("x", "y"):
                word.append(self.factor())
            else:
                self.pos = save
                break
        if self.pos == start:
            self.error("expected a term")
        return "".join(word), c

    def poly(self) -> NcPolynomial:
        acc: dict = {}
        self.skip_ws()
        sign = 1
        if self.peek() in ("+", "-"):
            sign = -1 if self.peek() == "-" else 1
            self.pos += 1
            self.skip_ws()
        while True:
            w, c = self.term()
            acc[w] = acc.get(w, 0) + sign * c
            self.skip_ws()
            ch = self.peek()
            if ch == "":
                break
            if ch not in ("+", "-"):
                self.error(f"unexpected character {ch!r}")
            sign = -1 if ch == "-" else 1
            self.pos += 1
            self.skip_ws()
        return NcPolynomial(acc, self.field)


def parse_poly(text: str, field: Field = QQ) -> NcPolynomial:
    """Parse e.g. ``"1+x^2yx^2+yx^2y"`` or ``"1/2*x - 3 y*x"``."""
    return _Parser(text, field).poly()


def format_poly(p: NcPolynomial) -> str:
    if not p.terms:
        return "0"
    field = p.field
    out = []
    for w, c in p.sorted_terms():
        neg = field == QQ and c < 0
        a = -c if neg else c
        mono = format_word(w)
        if not w:
            body = field.format(a)
        elif a == 1:
            body = mono
        else:
            body = f"{field.format(a)}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)


def poly(text: str, field: Field = QQ) -> NcPolynomial:
    """Shorthand for :func:`parse_poly`."""
    return parse_poly(text, field)


def generators(field: Field = QQ) -> tuple[NcPolynomial, NcPolynomial]:
    return NcPolynomial.gen("x", field), NcPolynomial.gen("y", field)


def words_of_length(n: int) -> Sequence[Word]:
    return ["".join(t) for t in product("xy", repeat=n)]
