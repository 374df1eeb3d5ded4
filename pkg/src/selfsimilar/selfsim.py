"""The morphism psi_{a,b}: K<x,y> -> M_2(K<x,y>) and what is built from it.

The generators map to anti-diagonal matrices::

    x -> [[0, x^a], [y^a, 0]]        y -> [[0, x^b], [y^b, 0]]

so the image of a word of length n is diagonal (n even) or anti-diagonal
(n odd).  Row 0 reads ``x^{e1} y^{e2} x^{e3} ...`` and row 1 reads
``y^{e1} x^{e2} y^{e3} ...`` where ``e_i`` is a or b according to the i-th
letter.  Rows and columns are numbered from 0.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Sequence

from .arith.fields import QQ, Field
from .arith.matrix import ExactMatrix
from .freealg import Generator, NcPolynomial, Word, rle_encode

Letter = tuple[int, int]
LETTERS: tuple[Letter, ...] = ((0, 0), (0, 1), (1, 0), (1, 1))

MAX_LEVEL = 12


class LevelCapError(ValueError):
    """Requested 2^k x 2^k object is above the memory guard."""


@dataclass(frozen=True)
class MorphismParams:
    a: int = 1
    b: int = 0

    def __post_init__(self):
        if self.a < 0 or self.b < 0:
            raise ValueError("morphism parameters must be non-negative")


DEFAULT_PARAMS = MorphismParams(1, 0)


def check_level(k: int, allow_large: bool = False, cap: int = MAX_LEVEL):
    if k < 0:
        raise ValueError("level k must be non-negative")
    if k > cap and not allow_large:
        raise LevelCapError(f"level {k} exceeds the cap {cap}; pass an override to force it")


class AlgMatrix:
    """Square matrix with :class:`NcPolynomial` entries over one field."""

    __slots__ = ("n", "rows", "field")

    def __init__(self, rows: Iterable[Iterable[NcPolynomial]], field: Field = None):
        rows = tuple(tuple(r) for r in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise ValueError("matrix must be square")
        if field is None:
            field = rows[0][0].field if n else QQ
        if any(p.field != field for r in rows for p in r):
            raise ValueError("entries must share one coefficient field")
        self.n = n
        self.rows = rows
        self.field = field

    @classmethod
    def identity(cls, n: int, field: Field = QQ) -> AlgMatrix:
        one, zero = NcPolynomial.one(field), NcPolynomial.zero(field)
        return cls([[one if i == j else zero for j in range(n)] for i in range(n)], field)

    @classmethod
    def blocks(cls, quads: Sequence[Sequence[AlgMatrix]]) -> AlgMatrix:
        """Assemble ``[[A, B], [C, D]]`` from equal-sized blocks."""
        (a, b), (c, d) = quads
        top = [ra + rb for ra, rb in zip(a.rows, b.rows)]
        bottom = [rc + rd for rc, rd in zip(c.rows, d.rows)]
        return cls(top + bottom, a.field)

    def __getitem__(self, ij) -> NcPolynomial:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        if not isinstance(other, AlgMatrix):
            return NotImplemented
        return self.field == other.field and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def __add__(self, other: AlgMatrix) -> AlgMatrix:
        return AlgMatrix(([p + q for p, q in zip(r1, r2)]
                          for r1, r2 in zip(self.rows, other.rows)), self.field)

    def __mul__(self, other: AlgMatrix) -> AlgMatrix:
        if self.n != other.n:
            raise ValueError("dimension mismatch")
        n = self.n
        zero = NcPolynomial.zero(self.field)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for l in range(n):
                    p, q = self.rows[i][l], other.rows[l][j]
                    if p and q:
                        acc = acc + p * q
                row.append(acc)
            out.append(row)
        return AlgMatrix(out, self.field)

    def nonzero_positions(self) -> list[tuple[int, int]]:
        return [(i, j) for i, r in enumerate(self.rows) for j, p in enumerate(r) if p]

    def is_diagonal(self) -> bool:
        return all(i == j for i, j in self.nonzero_positions())

    def is_monomial_pattern(self) -> bool:
        """Exactly one nonzero entry in each row and each column."""
        pos = self.nonzero_positions()
        return (len(pos) == self.n and len({i for i, _ in pos}) == self.n
                and len({j for _, j in pos}) == self.n)

    def eval_ones(self) -> ExactMatrix:
        return ExactMatrix([p.eval_ones() for p in r] for r in self.rows)

    def format(self) -> str:
        return "[" + "; ".join(", ".join(str(p) for p in r) for r in self.rows) + "]"

    def __repr__(self):
        return f"AlgMatrix({self.format()})"


# ---------- the morphism

@lru_cache(maxsize=1 << 16)
def psi_word(w: Word, a: int, b: int) -> tuple[Word, Word, int]:
    """``(row0, row1, col0)``: the two nonzero entries of psi_{a,b}(w).

    The row-0 entry sits in column ``col0`` and the row-1 entry in column
    ``1 - col0``.
    """
    r0, r1 = [], []
    for i, ch in enumerate(w):
        e = a if ch == "x" else b
        if e:
            if i % 2 == 0:
                r0.append("x" * e)
                r1.append("y" * e)
            else:
                r0.append("y" * e)
                r1.append("x" * e)
    return "".join(r0), "".join(r1), len(w) % 2


def psi(s: NcPolynomial, params: MorphismParams = DEFAULT_PARAMS) -> AlgMatrix:
    """The 2 x 2 matrix psi_{a,b}(s)."""
    a, b = params.a, params.b
    acc = [[{}, {}], [{}, {}]]
    for w, c in s.terms.items():
        r0, r1, col = psi_word(w, a, b)
        cell = acc[0][col]
        cell[r0] = cell.get(r0, 0) + c
        cell = acc[1][1 - col]
        cell[r1] = cell.get(r1, 0) + c
    return AlgMatrix([[s._from_acc(acc[i][j]) for j in (0, 1)] for i in (0, 1)], s.field)


def act(s: NcPolynomial, letter: Letter) -> NcPolynomial:
    """Right action ``s . (i, j)``: entry ``(i, j)`` of psi(s) with a=1, b=0."""
    i, j = letter
    return psi(s, DEFAULT_PARAMS)[i, j]


def act_word(s: NcPolynomial, letters: Iterable[Letter]) -> NcPolynomial:
    for letter in letters:
        if not s:
            break
        s = act(s, letter)
    return s


_LETTER_RE = re.compile(r"\s*\(\s*([01])\s*,\s*([01])\s*\)\s*")


def parse_letters(text: str) -> list[Letter]:
    """``"(0,0)(1,1)(0,1)"`` -> ``[(0, 0), (1, 1), (0, 1)]``."""
    out = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _LETTER_RE.match(text, pos)
        if not m:
            raise ValueError(f"bad letter at position {pos} in {text!r}; expected '(i,j)'")
        out.append((int(m.group(1)), int(m.group(2))))
        pos = m.end()
    return out


def format_letter(letter: Letter) -> str:
    return f"({letter[0]},{letter[1]})"


# ---------- iteration

def psi_iter(s: NcPolynomial, k: int, params: MorphismParams = DEFAULT_PARAMS,
             *, allow_large: bool = False) -> AlgMatrix:
    """psi^(k)(s): 2^k x 2^k, with psi^(0)(s) = [s] and psi^(k+1)(s) the
    block matrix of psi^(k) applied to the four entries of psi(s)."""
    check_level(k, allow_large)
    memo: dict[tuple[NcPolynomial, int], AlgMatrix] = {}

    def go(t: NcPolynomial, level: int) -> AlgMatrix:
        key = (t, level)
        hit = memo.get(key)
        if hit is not None:
            return hit
        if level == 0:
            out = AlgMatrix([[t]], t.field)
        else:
            m = psi(t, params)
            out = AlgMatrix.blocks([[go(m[i, j], level - 1) for j in (0, 1)] for i in (0, 1)])
        memo[key] = out
        return out

    return go(s, k)


def _perm_power(perm: Sequence[int], e: int) -> list[int]:
    out = list(range(len(perm)))
    base = list(perm)
    while e:
        if e & 1:
            out = [base[i] for i in out]
        e >>= 1
        if e:
            base = [base[i] for i in base]
    return out


def generator_permutations(k: int, params: MorphismParams = DEFAULT_PARAMS
                           ) -> tuple[list[int], list[int]]:
    """Permutations for psi^(k)(x) and psi^(k)(y) evaluated at x = y = 1.

    ``perm[i]`` is the column of the single 1 in row ``i``.  Evaluation at
    ones is an algebra morphism, so ``A_{k+1} = [[0, A_k^a], [B_k^a, 0]]``
    and ``B_{k+1} = [[0, A_k^b], [B_k^b, 0]]``.
    """
    if k < 0:
        raise ValueError("level k must be non-negative")
    pa, pb = [0], [0]
    for _ in range(k):
        n = len(pa)
        aa, ba = _perm_power(pa, params.a), _perm_power(pb, params.a)
        ab, bb = _perm_power(pa, params.b), _perm_power(pb, params.b)
        pa = [n + c for c in aa] + ba
        pb = [n + c for c in ab] + bb
    return pa, pb


def generator_matrix_at_ones(g, k: int, params: MorphismParams = DEFAULT_PARAMS,
                             *, allow_large: bool = False) -> ExactMatrix:
    """A_k (g = x) or B_k (g = y): psi^(k)(g) evaluated at (1, 1)."""
    check_level(k, allow_large)
    pa, pb = generator_permutations(k, params)
    return ExactMatrix.from_permutation(pa if Generator(g) is Generator.X else pb)


# ---------- run-length encoding correspondence

@dataclass(frozen=True)
class RleVerdict:
    holds: bool
    word: Word
    params: MorphismParams
    w1: Word
    w2: Word
    block_exponents: tuple[int, ...]
    runs: tuple[int, ...]
    detail: str = ""

    def to_dict(self) -> dict:
        return {
            "holds": self.holds,
            "word": self.word,
            "a": self.params.a,
            "b": self.params.b,
            "w1": self.w1,
            "w2": self.w2,
            "block_exponents": list(self.block_exponents),
            "runs": list(self.runs),
            "detail": self.detail,
        }


def _exponent_value(g: Generator, params: MorphismParams) -> int:
    # read the exponent off the nonzero entry of the generator's image
    img = psi(NcPolynomial.gen(g), params)
    (word,) = img[0, 1].terms
    return len(word)


def rle_correspondence_check(z: Word, params: MorphismParams) -> RleVerdict:
    """Check that the exponents of ``z`` are the run lengths of the block
    exponents of the two nonzero entries of psi_{a,b}(z).

    Requires ``a, b >= 1`` and ``a != b``.  A failed check comes back as a
    verdict with ``holds=False``.
    """
    if not z:
        raise ValueError("z must be a nonempty word")
    if params.a < 1 or params.b < 1 or params.a == params.b:
        raise ValueError("the correspondence needs a >= 1, b >= 1 and a != b")
    value_to_gen = {_exponent_value(Generator.X, params): Generator.X,
                    _exponent_value(Generator.Y, params): Generator.Y}
    image = psi(NcPolynomial.monomial(z), params)
    pos = image.nonzero_positions()
    z_runs = rle_encode(z)
    expected = tuple(n for _, n in z_runs)

    def verdict(holds, w1="", w2="", blocks=(), runs=(), detail=""):
        return RleVerdict(holds, z, params, w1, w2, tuple(blocks), tuple(runs), detail)

    if len(pos) != 2 or not all(image[p].is_monomial() for p in pos):
        return verdict(False, detail=f"image is not a monomial matrix: {image.format()}")
    (w1,), (w2,) = image[pos[0]].terms, image[pos[1]].terms

    block_seqs = []
    for w in (w1, w2):
        block_seqs.append(tuple(n for _, n in rle_encode(w)))
    if block_seqs[0] != block_seqs[1]:
        return verdict(False, w1, w2, block_seqs[0],
                       detail=f"entries disagree: {block_seqs[0]} vs {block_seqs[1]}")
    blocks = block_seqs[0]
    grouped = []
    for v in blocks:
        if grouped and grouped[-1][0] == v:
            grouped[-1][1] += 1
        else:
            grouped.append([v, 1])
    runs = tuple(c for _, c in grouped)
    gens = [value_to_gen.get(v) for v, _ in grouped]
    if runs != expected:
        return verdict(False, w1, w2, blocks, runs,
                       detail=f"run lengths {runs} != exponents {expected}")
    if gens != [g for g, _ in z_runs]:
        return verdict(False, w1, w2, blocks, runs, detail="run values do not match the letters of z")
    return verdict(True, w1, w2, blocks, runs)

