"""Dense square matrices over Q with exact characteristic polynomials."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .unipoly import UniPoly

_ZERO = Fraction(0)
_ONE = Fraction(1)


class DimensionError(ValueError):
    pass


def _frac(c) -> Fraction:
    # share the common constants; dense zero-heavy matrices would otherwise
    # allocate one object per cell
    if c == 0:
        return _ZERO
    if c == 1:
        return _ONE
    return c if type(c) is Fraction else Fraction(c)


class ExactMatrix:
    """Immutable n x n matrix of Fractions."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Iterable[Iterable]):
        rows = tuple(tuple(_frac(c) for c in row) for row in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionError("matrix must be square")
        self.n = n
        self.rows = rows

    @classmethod
    def _trusted(cls, rows: list[list[Fraction]]) -> ExactMatrix:
        # rows already square and made of Fractions
        m = cls.__new__(cls)
        m.n = len(rows)
        m.rows = tuple(tuple(r) for r in rows)
        return m

    @classmethod
    def identity(cls, n: int) -> ExactMatrix:
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zero(cls, n: int) -> ExactMatrix:
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def from_permutation(cls, perm: Sequence[int]) -> ExactMatrix:
        """Row ``i`` has its single 1 in column ``perm[i]``."""
        n = len(perm)
        rows = []
        for i in range(n):
            row = [_ZERO] * n
            row[perm[i]] = _ONE
            rows.append(row)
        return cls._trusted(rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other: ExactMatrix) -> ExactMatrix:
        _check_dims(self, other)
        return ExactMatrix([a + b for a, b in zip(ra, rb)]
                           for ra, rb in zip(self.rows, other.rows))

    def __sub__(self, other: ExactMatrix) -> ExactMatrix:
        _check_dims(self, other)
        return ExactMatrix([a - b for a, b in zip(ra, rb)]
                           for ra, rb in zip(self.rows, other.rows))

    def scale(self, c) -> ExactMatrix:
        c = Fraction(c)
        cache: dict[Fraction, Fraction] = {}
        out = []
        for row in self.rows:
            new = []
            for v in row:
                w = cache.get(v)
                if w is None:
                    w = cache[v] = _frac(v * c)
                new.append(w)
            out.append(new)
        return ExactMatrix(out)

    def __mul__(self, other):
        if isinstance(other, ExactMatrix):
            return mat_mul(self, other)
        return self.scale(other)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, e: int) -> ExactMatrix:
        result, base = ExactMatrix.identity(self.n), self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def transpose(self) -> ExactMatrix:
        return ExactMatrix(zip(*self.rows))

    def row_sums(self) -> list[Fraction]:
        return [sum(r, _ZERO) for r in self.rows]

    def col_sums(self) -> list[Fraction]:
        return [sum(c, _ZERO) for c in zip(*self.rows)]

    def is_integral(self) -> bool:
        return all(v.denominator == 1 for row in self.rows for v in row)

    def is_permutation(self) -> bool:
        for row in self.rows:
            if sum(1 for v in row if v) != 1 or any(v not in (0, 1) for v in row):
                return False
        return all(sum(c) == 1 for c in zip(*self.rows))

    def __repr__(self):
        return f"ExactMatrix({[[str(v) for v in r] for r in self.rows]})"


def _check_dims(a: ExactMatrix, b: ExactMatrix):
    if a.n != b.n:
        raise DimensionError(f"dimension mismatch: {a.n} vs {b.n}")


def mat_mul(a: ExactMatrix, b: ExactMatrix) -> ExactMatrix:
    _check_dims(a, b)
    n = a.n
    brows = b.rows
    out = []
    for row in a.rows:
        acc = [_ZERO] * n
        for l, v in enumerate(row):
            if v:
                for j, w in enumerate(brows[l]):
                    if w:
                        acc[j] += v * w
        out.append(acc)
    return ExactMatrix(out)


def hessenberg(m: ExactMatrix) -> list[list[Fraction]]:
    """Upper Hessenberg form similar to ``m``, by exact Gaussian similarity.

    Zero entries are skipped throughout, which keeps the very sparse
    matrices of this package cheap.
    """
    n = m.n
    h = [list(r) for r in m.rows]
    for k in range(1, n - 1):
        piv_row = next((i for i in range(k, n) if h[i][k - 1]), None)
        if piv_row is None:
            continue
        if piv_row != k:
            h[piv_row], h[k] = h[k], h[piv_row]
            for r in h:
                r[piv_row], r[k] = r[k], r[piv_row]
        piv = h[k][k - 1]
        hk = h[k]
        for i in range(k + 1, n):
            u = h[i][k - 1]
            if not u:
                continue
            u = u / piv
            hi = h[i]
            for j in range(n):
                if hk[j]:
                    hi[j] -= u * hk[j]
            # the inverse column operation keeps the transform a similarity
            for r in h:
                if r[i]:
                    r[k] += u * r[i]
    return h


def charpoly_exact(m: ExactMatrix) -> UniPoly:
    """Monic ``det(t I - m)``, computed with exact rational arithmetic."""
    n = m.n
    if n == 0:
        return UniPoly([1])
    h = hessenberg(m)
    # p[j] is the characteristic polynomial of the leading j x j block
    p: list[list[Fraction]] = [[_ONE]]
    for j in range(1, n + 1):
        prev = p[j - 1]
        new = [_ZERO] + list(prev)
        d = h[j - 1][j - 1]
        if d:
            for i, c in enumerate(prev):
                new[i] -= d * c
        sub = _ONE
        for i in range(j - 1, 0, -1):
            sub = sub * h[i][i - 1]
            if not sub:
                break
            c = sub * h[i - 1][j - 1]
            if c:
                for e, v in enumerate(p[i - 1]):
                    new[e] -= c * v
        p.append(new)
    return UniPoly(p[n])
