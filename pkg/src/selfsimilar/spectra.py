"""Spectral side: the doubly stochastic matrices M_k(a, b).

``M_k(a,b)`` is psi_{a,b}^(k)((x + y)/2) evaluated at x = y = 1, which is
``(A_k + B_k) / 2`` for the permutation matrices A_k, B_k of the two
generators.  This module computes their characteristic polynomials, checks
the recurrence and Chebyshev structure of ``C_k = charpoly(M_k(1,0))``,
tests nilpotency of ``2 M_k(a,b)`` mod 2 and renders parity images.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .arith.bitmatrix import BitMatrix, bitmat_pow, bitmat_power_until_zero
from .arith.matrix import ExactMatrix, charpoly_exact
from .arith.unipoly import UniPoly, chebyshev_t, squarefree_decomposition, squarefree_part
from .selfsim import MorphismParams, check_level, generator_permutations

CHARPOLY_MAX_LEVEL = 8

_HALF = Fraction(1, 2)
_ONE = Fraction(1)
_ZERO = Fraction(0)


def m_k(a: int, b: int, k: int, *, allow_large: bool = False) -> ExactMatrix:
    """M_k(a, b) = (A_k + B_k) / 2, built from the generator permutations."""
    check_level(k, allow_large)
    pa, pb = generator_permutations(k, MorphismParams(a, b))
    n = len(pa)
    rows = []
    for i in range(n):
        row = [_ZERO] * n
        if pa[i] == pb[i]:
            row[pa[i]] = _ONE
        else:
            row[pa[i]] = _HALF
            row[pb[i]] = _HALF
        rows.append(row)
    return ExactMatrix._trusted(rows)


def exchange_matrix(n: int) -> ExactMatrix:
    return ExactMatrix.from_permutation([n - 1 - i for i in range(n)])


def block_exchange(n: int) -> ExactMatrix:
    """``[[0, I], [I, 0]]`` with n/2 x n/2 identity blocks (``[1]`` for n = 1)."""
    if n == 1:
        return ExactMatrix.identity(1)
    h = n // 2
    return ExactMatrix.from_permutation([(i + h) % n for i in range(n)])


@dataclass(frozen=True)
class ParityVerdict:
    a: int
    b: int
    k: int
    case: str  # "exchange" or "block-exchange"
    holds: bool


def structural_check_parity(a: int, b: int, k: int) -> ParityVerdict:
    """For a = b mod 2 identify M_k(a,b) as a signed-spectrum involution.

    Odd a, b give the exchange matrix J.  Even a, b give the block matrix
    ``[[0, I], [I, 0]]``: already psi_{0,0}(x) = [[0, 1], [1, 0]], and the
    identity blocks come from A_k^a = I for even a.  Either way the
    eigenvalues lie in {-1, 1}.
    """
    if (a - b) % 2:
        raise ValueError(f"a = {a} and b = {b} have different parity")
    m = m_k(a, b, k)
    n = m.n
    if a % 2:
        return ParityVerdict(a, b, k, "exchange", m == exchange_matrix(n))
    return ParityVerdict(a, b, k, "block-exchange", m == block_exchange(n))


def pm_one_exponents(c: UniPoly) -> Optional[tuple[int, int]]:
    """``(p, q)`` with ``c == lead * (t - 1)^p (t + 1)^q``, or None."""
    if c.is_zero():
        return None
    minus, plus = UniPoly([-1, 1]), UniPoly([1, 1])
    p = c.multiplicity(minus) if c.degree >= 1 else 0
    q = c.multiplicity(plus) if c.degree >= 1 else 0
    return (p, q) if c == minus ** p * plus ** q * c.lead else None


def c_k(k: int, *, allow_large: bool = False) -> UniPoly:
    """Characteristic polynomial of M_k(1, 0), computed from the matrix."""
    check_level(k, allow_large, cap=CHARPOLY_MAX_LEVEL)
    return charpoly_exact(m_k(1, 0, k, allow_large=allow_large))


def recurrence_rhs(c_prev2: UniPoly, k: int) -> UniPoly:
    """``t^(2^(k-1)) / 2^(2^(k-2)) * C_{k-2}(2 t^2 - 1)``."""
    if k < 2:
        raise ValueError("the recurrence starts at k = 2")
    scale = Fraction(1, 2 ** (2 ** (k - 2)))
    return UniPoly.monomial(2 ** (k - 1), scale) * c_prev2.compose(chebyshev_t(2))


@dataclass(frozen=True)
class RecurrenceVerdict:
    k: int
    holds: bool
    lhs: UniPoly
    rhs: UniPoly


def verify_recurrence(k: int, cache: Optional[dict] = None) -> RecurrenceVerdict:
    """Compare C_k against the scaled composition built from C_{k-2}; both
    sides come from independent charpoly computations."""
    if k < 2:
        raise ValueError("the recurrence starts at k = 2")
    cache = {} if cache is None else cache
    for j in (k, k - 2):
        if j not in cache:
            cache[j] = c_k(j)
    lhs, rhs = cache[k], recurrence_rhs(cache[k - 2], k)
    return RecurrenceVerdict(k, lhs == rhs, lhs, rhs)


@dataclass(frozen=True)
class ChebyshevFactor:
    factor: UniPoly
    multiplicity: int
    witness_m: Optional[int]  # least m with factor | T_{2^m}^2 - 1


@dataclass(frozen=True)
class ChebyshevVerdict:
    k: int
    holds: bool
    squarefree: UniPoly
    factors: tuple[ChebyshevFactor, ...]


def _cos_dyadic_poly(m: int) -> UniPoly:
    """``T_{2^m}^2 - 1``: its roots are exactly cos(pi j / 2^m)."""
    t = chebyshev_t(2 ** m)
    return t * t - UniPoly([1])


def chebyshev_root_witness(k: int, c: Optional[UniPoly] = None) -> ChebyshevVerdict:
    """Check that every root of C_k is cos(pi j / 2^k) for an integer j.

    The squarefree part of C_k must divide ``T_{2^k}^2 - 1``.  Each factor
    of the squarefree decomposition also gets its least witness level m.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if c is None:
        c = c_k(k)
    sf = squarefree_part(c)
    target = _cos_dyadic_poly(k)
    holds = sf.divides(target)
    factors = []
    for f, mult in squarefree_decomposition(c):
        witness = None
        for m in range(0, k + 1):
            if f.divides(_cos_dyadic_poly(m)):
                witness = m
                break
        factors.append(ChebyshevFactor(f, mult, witness))
    return ChebyshevVerdict(k, holds, sf, tuple(factors))


# ---------- mod 2

def doubled_mod2(m: ExactMatrix) -> tuple[bool, BitMatrix]:
    """``(integral, (2 m) mod 2)``; non-integral cells reduce as 0."""
    integral = True
    rows = []
    for row in m.rows:
        r = 0
        for j, v in enumerate(row):
            if v:
                w = 2 * v
                if w.denominator != 1:
                    integral = False
                elif w.numerator % 2:
                    r |= 1 << j
        rows.append(r)
    return integral, BitMatrix(m.n, rows)


@dataclass(frozen=True)
class NilpotencyReport:
    a: int
    b: int
    k: int
    integral: bool
    index: Optional[int]  # None: not nilpotent within 2^k, a counterexample

    @property
    def nilpotent(self) -> bool:
        return self.index is not None

    def to_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "k": self.k,
                "integral": self.integral, "index": self.index}


def nilpotency_conjecture(a: int, b: int, k: int) -> NilpotencyReport:
    """Nilpotency index of ``2 M_k(a,b)`` over GF(2)."""
    check_level(k)
    integral, bits = doubled_mod2(m_k(a, b, k))
    index = bitmat_power_until_zero(bits, cap=max(1, bits.n))
    return NilpotencyReport(a, b, k, integral, index)


def nilpotency_sweep(amax: int, bmax: int, kmin: int, kmax: int) -> list[NilpotencyReport]:
    return [nilpotency_conjecture(a, b, k)
            for a in range(amax + 1) for b in range(bmax + 1)
            for k in range(kmin, kmax + 1)]


@dataclass(frozen=True)
class ParityImage:
    """Bit-per-cell picture; bit 1 (black) marks an odd entry."""

    width: int
    rows: tuple[int, ...]  # bit j of rows[i] is column j

    @property
    def height(self) -> int:
        return len(self.rows)

    def pixel(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def black_count(self) -> int:
        return sum(bin(r).count("1") for r in self.rows)

    def to_pbm(self, binary: bool = True) -> bytes:
        header = f"{'P4' if binary else 'P1'}\n{self.width} {self.height}\n".encode()
        if binary:
            nbytes = (self.width + 7) // 8
            body = bytearray()
            for r in self.rows:
                # PBM packs the leftmost pixel into the most significant bit
                rev = int(f"{r:0{self.width}b}"[::-1], 2) << (8 * nbytes - self.width)
                body += rev.to_bytes(nbytes, "big")
            return header + bytes(body)
        lines = [" ".join(str(self.pixel(i, j)) for j in range(self.width))
                 for i in range(self.height)]
        return header + ("\n".join(lines) + "\n").encode()

    def sha256(self) -> str:
        return hashlib.sha256(self.to_pbm(binary=True)).hexdigest()


def parity_image(a: int, b: int, k: int, power: int) -> ParityImage:
    """Parity pattern of ``(2 M_k(a,b))^power``, computed over GF(2)."""
    if power < 1:
        raise ValueError("power must be >= 1")
    check_level(k)
    _, bits = doubled_mod2(m_k(a, b, k))
    p = bitmat_pow(bits, power)
    return ParityImage(p.n, p.rows)
