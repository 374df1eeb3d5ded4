"""Univariate polynomials over Q.

Coefficients are stored low degree first with trailing zeros trimmed, so the
zero polynomial is the empty tuple.  Polynomials print with the variable
``t``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def _trim(coeffs: Iterable) -> tuple[Fraction, ...]:
    cs = [Fraction(c) for c in coeffs]
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


class UniPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = _trim(coeffs)

    @classmethod
    def monomial(cls, degree: int, c=1) -> UniPoly:
        return cls([0] * degree + [c])

    @classmethod
    def constant(cls, c) -> UniPoly:
        return cls([c])

    @classmethod
    def from_roots(cls, roots: Sequence) -> UniPoly:
        p = cls([1])
        for r in roots:
            p = p * cls([-Fraction(r), 1])
        return p

    @property
    def degree(self) -> int:
        """Degree; ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> UniPoly:
        if not self.coeffs:
            return self
        lc = self.coeffs[-1]
        return UniPoly(c / lc for c in self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == _trim([other])
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __neg__(self) -> UniPoly:
        return UniPoly(-c for c in self.coeffs)

    def __add__(self, other) -> UniPoly:
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    __radd__ = __add__

    def __sub__(self, other) -> UniPoly:
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> UniPoly:
        return _lift(other) - self

    def __mul__(self, other) -> UniPoly:
        other = _lift(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> UniPoly:
        if e < 0:
            raise ValueError("negative exponent")
        result, base = UniPoly([1]), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divrem(self, divisor: UniPoly) -> tuple[UniPoly, UniPoly]:
        if divisor.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = divisor.degree
        lc = divisor.lead
        if len(rem) - 1 < dd:
            return UniPoly(), self
        quot = [Fraction(0)] * (len(rem) - dd)
        for shift in range(len(rem) - 1 - dd, -1, -1):
            c = rem[shift + dd] / lc
            quot[shift] = c
            if c:
                for i, dc in enumerate(divisor.coeffs):
                    rem[shift + i] -= c * dc
        return UniPoly(quot), UniPoly(rem[:dd])

    def __floordiv__(self, other: UniPoly) -> UniPoly:
        return self.divrem(other)[0]

    def __mod__(self, other: UniPoly) -> UniPoly:
        return self.divrem(other)[1]

    def divides(self, other: UniPoly) -> bool:
        """True if ``self`` divides ``other`` exactly."""
        return (other % self).is_zero()

    def derivative(self) -> UniPoly:
        return UniPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def compose(self, inner: UniPoly) -> UniPoly:
        """``self(inner(t))`` by Horner's rule."""
        result = UniPoly()
        for c in reversed(self.coeffs):
            result = result * inner + c
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def multiplicity(self, factor: UniPoly) -> int:
        if factor.degree < 1:
            raise ValueError("factor must be non-constant")
        n, p = 0, self
        while not p.is_zero():
            q, r = p.divrem(factor)
            if not r.is_zero():
                break
            n, p = n + 1, q
        return n

    def __repr__(self):
        return f"UniPoly({self.format()!r})"

    def __str__(self):
        return self.format()

    def format(self, var: str = "t") -> str:
        """Expanded form, highest degree first, e.g. ``t^4 - 1/2*t^2``."""
        if not self.coeffs:
            return "0"
        parts = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            mono = "" if d == 0 else (var if d == 1 else f"{var}^{d}")
            cs = str(a.numerator) if a.denominator == 1 else f"{a.numerator}/{a.denominator}"
            if not mono:
                body = cs
            elif a == 1:
                body = mono
            else:
                body = f"{cs}*{mono}"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out


def _lift(x):
    if isinstance(x, UniPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return UniPoly([x])
    return NotImplemented


T = UniPoly([0, 1])


def gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic greatest common divisor (zero if both are zero)."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def squarefree_part(p: UniPoly) -> UniPoly:
    if p.degree < 1:
        return p.monic()
    return (p // gcd(p, p.derivative())).monic()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun's algorithm: pairs ``(f_i, i)`` with ``p = lc * prod f_i^i``.

    Each ``f_i`` is monic, squarefree and pairwise coprime; trivial factors
    are dropped.
    """
    if p.degree < 1:
        return []
    out = []
    dp = p.derivative()
    a = gcd(p, dp)
    b = p // a
    c = dp // a
    d = c - b.derivative()
    i = 1
    while b.degree >= 1:
        a = gcd(b, d)
        if a.degree >= 1:
            out.append((a, i))
        b = b // a
        c = d // a
        d = c - b.derivative()
        i += 1
    return out


def chebyshev_t(n: int) -> UniPoly:
    """Chebyshev polynomial of the first kind, ``T_n(cos x) = cos(n x)``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    prev, cur = UniPoly([1]), T
    if n == 0:
        return prev
    two_t = UniPoly([0, 2])
    for _ in range(n - 1):
        prev, cur = cur, two_t * cur - prev
    return cur


def product(factors: Iterable[tuple[UniPoly, int]]) -> UniPoly:
    out = UniPoly([1])
    for f, e in factors:
        out = out * f ** e
    return out
