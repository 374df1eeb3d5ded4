"""Square matrices over GF(2) with rows packed into Python ints.

Bit ``j`` of ``rows[i]`` is the entry in row ``i``, column ``j``.
"""

from __future__ import annotations

from typing import Iterable, Optional, Sequence


class BitMatrix:
    __slots__ = ("n", "rows")

    def __init__(self, n: int, rows: Iterable[int]):
        rows = tuple(rows)
        if len(rows) != n:
            raise ValueError(f"expected {n} rows, got {len(rows)}")
        mask = (1 << n) - 1
        if any(r < 0 or r & ~mask for r in rows):
            raise ValueError("row has bits outside the column range")
        self.n = n
        self.rows = rows

    @classmethod
    def zero(cls, n: int) -> BitMatrix:
        return cls(n, [0] * n)

    @classmethod
    def identity(cls, n: int) -> BitMatrix:
        return cls(n, [1 << i for i in range(n)])

    @classmethod
    def from_lists(cls, entries: Sequence[Sequence[int]]) -> BitMatrix:
        n = len(entries)
        rows = []
        for row in entries:
            if len(row) != n:
                raise ValueError("matrix must be square")
            rows.append(sum(1 << j for j, v in enumerate(row) if v % 2))
        return cls(n, rows)

    @classmethod
    def from_strings(cls, rows: Sequence[str]) -> BitMatrix:
        """Rows written left to right, e.g. ``["0011", "1100", ...]``."""
        return cls.from_lists([[int(ch) for ch in r] for r in rows])

    def get(self, i: int, j: int) -> int:
        return (self.rows[i] >> j) & 1

    def to_lists(self) -> list[list[int]]:
        return [[(r >> j) & 1 for j in range(self.n)] for r in self.rows]

    def is_zero(self) -> bool:
        return not any(self.rows)

    def popcount(self) -> int:
        return sum(bin(r).count("1") for r in self.rows)

    def __eq__(self, other):
        if not isinstance(other, BitMatrix):
            return NotImplemented
        return self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, self.rows))

    def __matmul__(self, other: BitMatrix) -> BitMatrix:
        return bitmat_mul(self, other)

    def __pow__(self, e: int) -> BitMatrix:
        return bitmat_pow(self, e)

    def __repr__(self):
        return f"BitMatrix({self.n}, popcount={self.popcount()})"


def bitmat_mul(a: BitMatrix, b: BitMatrix) -> BitMatrix:
    if a.n != b.n:
        raise ValueError(f"dimension mismatch: {a.n} vs {b.n}")
    brows = b.rows
    out = []
    for row in a.rows:
        acc = 0
        while row:
            low = row & -row
            acc ^= brows[low.bit_length() - 1]
            row ^= low
        out.append(acc)
    return BitMatrix(a.n, out)


def bitmat_pow(m: BitMatrix, e: int) -> BitMatrix:
    if e < 0:
        raise ValueError("negative exponent")
    result, base = BitMatrix.identity(m.n), m
    while e:
        if e & 1:
            result = result @ base
        e >>= 1
        if e:
            base = base @ base
    return result


def bitmat_power_until_zero(m: BitMatrix, cap: int) -> Optional[int]:
    """Smallest ``N <= cap`` with ``m**N == 0``, or ``None``.

    Squares ``m`` until a power ``m**(2**j)`` vanishes, then refines the
    index between ``2**(j-1)`` and ``2**j`` by binary search over the saved
    squares.  Powers of a nilpotent matrix stay zero once they reach zero,
    so the search is monotone.  For an n x n matrix ``cap = n`` decides
    nilpotency.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    if m.is_zero():
        return 1
    squares = [m]  # squares[i] == m ** (2 ** i), all nonzero
    while True:
        if 1 << (len(squares) - 1) >= cap:
            # m ** (2**j) != 0 with 2**j >= cap, hence m ** cap != 0
            return None
        nxt = squares[-1] @ squares[-1]
        if nxt.is_zero():
            break
        squares.append(nxt)
    # m ** top != 0 and m ** (2 * top) == 0
    top_exp = len(squares) - 1
    acc, index = squares[top_exp], 1 << top_exp
    for i in range(top_exp - 1, -1, -1):
        cand = acc @ squares[i]
        if not cand.is_zero():
            acc, index = cand, index + (1 << i)
    n_index = index + 1
    return n_index if n_index <= cap else None
