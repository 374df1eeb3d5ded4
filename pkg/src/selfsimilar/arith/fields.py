"""Coefficient fields: the rationals and prime fields F_p.

A field object never wraps its elements.  Elements of Q are plain
:class:`fractions.Fraction` values and elements of F_p are plain ``int``
residues in ``[0, p)``; the field object knows how to normalise, print and
invert them.  :class:`PrimeFieldElement` is a small standalone value type for
callers who want operator arithmetic on residues.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import Union

Coefficient = Union[int, Fraction]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class FieldMismatchError(ValueError):
    """Operands live over different coefficient fields."""


@dataclass(frozen=True)
class RationalField:
    """The field Q."""

    zero = Fraction(0)
    one = Fraction(1)
    characteristic = 0

    @property
    def is_prime_field(self) -> bool:
        return False

    def coerce(self, value) -> Fraction:
        if isinstance(value, PrimeFieldElement):
            raise FieldMismatchError("cannot coerce an F_p residue into Q")
        return Fraction(value)

    def inv(self, c: Fraction) -> Fraction:
        if c == 0:
            raise ZeroDivisionError("zero has no inverse")
        return 1 / c

    def format(self, c: Fraction) -> str:
        if c.denominator == 1:
            return str(c.numerator)
        return f"{c.numerator}/{c.denominator}"

    def __str__(self) -> str:
        return "Q"


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p; residues are stored as ints in ``[0, p)``."""

    p: int

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"field modulus must be prime, got {self.p}")

    zero = 0
    one = 1

    @property
    def characteristic(self) -> int:
        return self.p

    @property
    def is_prime_field(self) -> bool:
        return True

    def coerce(self, value) -> int:
        if isinstance(value, PrimeFieldElement):
            if value.modulus != self.p:
                raise FieldMismatchError(f"residue mod {value.modulus} used over F_{self.p}")
            return value.residue
        if isinstance(value, bool):
            value = int(value)
        if isinstance(value, int):
            return value % self.p
        if isinstance(value, _RationalABC):
            num, den = value.numerator, value.denominator
            if den % self.p == 0:
                raise ZeroDivisionError(f"denominator {den} vanishes in F_{self.p}")
            return num * pow(den, -1, self.p) % self.p
        raise TypeError(f"cannot coerce {value!r} into F_{self.p}")

    def inv(self, c: int) -> int:
        if c % self.p == 0:
            raise ZeroDivisionError("zero has no inverse")
        return pow(c, -1, self.p)

    def format(self, c: int) -> str:
        return str(c)

    def __str__(self) -> str:
        return f"F_{self.p}"


QQ = RationalField()
GF2 = PrimeField(2)

Field = Union[RationalField, PrimeField]


def field_from_modulus(p: int) -> Field:
    """``0`` selects Q, any prime selects F_p."""
    return QQ if p == 0 else PrimeField(p)


@dataclass(frozen=True)
class PrimeFieldElement:
    """A residue modulo a prime, with operator arithmetic."""

    residue: int
    modulus: int

    def __post_init__(self):
        if not is_prime(self.modulus):
            raise ValueError(f"modulus must be prime, got {self.modulus}")
        object.__setattr__(self, "residue", self.residue % self.modulus)

    def _other(self, other) -> int:
        if isinstance(other, PrimeFieldElement):
            if other.modulus != self.modulus:
                raise FieldMismatchError(
                    f"moduli differ: {self.modulus} vs {other.modulus}")
            return other.residue
        if isinstance(other, int):
            return other
        return NotImplemented

    def _new(self, r: int) -> PrimeFieldElement:
        return PrimeFieldElement(r, self.modulus)

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(self.residue + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(self.residue - o)

    def __rsub__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(o - self.residue)

    def __mul__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else self._new(self.residue * o)

    __rmul__ = __mul__

    def __neg__(self):
        return self._new(-self.residue)

    def inverse(self) -> PrimeFieldElement:
        if self.residue == 0:
            raise ZeroDivisionError("zero has no inverse")
        return self._new(pow(self.residue, -1, self.modulus))

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return NotImplemented
        return self * self._new(o).inverse()

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return self._new(pow(self.residue, e, self.modulus))

    def __bool__(self):
        return self.residue != 0

    def __int__(self):
        return self.residue

    def __repr__(self):
        return f"{self.residue} (mod {self.modulus})"
