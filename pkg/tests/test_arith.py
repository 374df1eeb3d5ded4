import random
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from selfsimilar.arith import (
    GF2,
    QQ,
    BitMatrix,
    DimensionError,
    ExactMatrix,
    PrimeField,
    UniPoly,
    bitmat_mul,
    bitmat_pow,
    bitmat_power_until_zero,
    charpoly_exact,
    chebyshev_t,
    field_from_modulus,
    gcd,
    is_prime,
    mat_mul,
    squarefree_decomposition,
    squarefree_part,
)

t = UniPoly.monomial(1)
ONE = UniPoly([1])


# ---------- fields

def test_fields_basic():
    assert str(QQ) == "Q"
    assert GF2.coerce(3) == 1
    assert PrimeField(5).coerce(Fraction(1, 2)) == 3
    assert PrimeField(7).inv(3) == 5
    assert field_from_modulus(0) is QQ
    with pytest.raises(ValueError):
        PrimeField(4)
    with pytest.raises(ZeroDivisionError):
        PrimeField(3).inv(0)


def test_is_prime_small():
    assert [n for n in range(30) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


# ---------- univariate polynomials

def test_unipoly_format_and_arith():
    assert (t ** 4 - t ** 2 * Fraction(1, 2)).format() == "t^4 - 1/2*t^2"
    assert UniPoly([]).degree == -1
    q, r = (t ** 3 + 1).divrem(t + 1)
    assert q == t ** 2 - t + 1 and r.is_zero()
    with pytest.raises(ZeroDivisionError):
        t.divrem(UniPoly([]))
    assert (t ** 2 - 1).compose(2 * t ** 2 - 1) == 4 * t ** 4 - 4 * t ** 2


def test_chebyshev_small():
    assert chebyshev_t(0) == ONE
    assert chebyshev_t(1) == t
    assert chebyshev_t(2) == 2 * t ** 2 - 1
    assert chebyshev_t(4) == 8 * t ** 4 - 8 * t ** 2 + 1


@pytest.mark.parametrize("m", range(0, 9))
@pytest.mark.parametrize("n", range(0, 9))
def test_chebyshev_composition(m, n):
    assert chebyshev_t(m).compose(chebyshev_t(n)) == chebyshev_t(m * n)


def test_squarefree_decomposition():
    f = (t ** 2 - 1) * t ** 6 * (t ** 2 - Fraction(1, 2)) ** 3
    dec = squarefree_decomposition(f)
    assert {m: g for g, m in dec} == {1: t ** 2 - 1, 3: t ** 2 - Fraction(1, 2), 6: t}
    recon = ONE
    for g, m in dec:
        recon = recon * g ** m
    assert recon == f
    assert squarefree_part(f) == (t ** 2 - 1) * t * (t ** 2 - Fraction(1, 2))
    assert gcd(f, f.derivative()).lead == 1


small_coeffs = st.lists(st.fractions(min_value=-5, max_value=5, max_denominator=4),
                        min_size=1, max_size=6)


@settings(max_examples=150, deadline=None)
@given(small_coeffs, small_coeffs)
def test_divrem_property(a, b):
    f, g = UniPoly(a), UniPoly(b)
    if g.is_zero():
        return
    q, r = f.divrem(g)
    assert q * g + r == f
    assert r.degree < g.degree


@settings(max_examples=100, deadline=None)
@given(small_coeffs, small_coeffs)
def test_squarefree_part_against_sympy(a, b):
    f = UniPoly(a) * UniPoly(b) ** 2
    if f.degree < 1:
        return
    x = sympy.Symbol("x")
    sf = sympy.Poly(sympy.sqf_part(sympy.Poly(list(reversed(f.coeffs)), x)), x)
    expected = UniPoly(list(reversed([Fraction(int(c.p), int(c.q)) for c in sf.monic().all_coeffs()])))
    assert squarefree_part(f) == expected


# ---------- exact matrices

def _rand_matrix(rng, n):
    return ExactMatrix([[Fraction(rng.randint(-3, 3), rng.choice([1, 1, 2, 4])) for _ in range(n)]
                        for _ in range(n)])


def _sympy_charpoly(m: ExactMatrix) -> UniPoly:
    x = sympy.Symbol("x")
    sm = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in m.rows])
    cs = sm.charpoly(x).all_coeffs()
    return UniPoly(list(reversed([Fraction(int(c.p), int(c.q)) for c in cs])))


@pytest.mark.parametrize("seed", range(25))
def test_charpoly_matches_sympy(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    m = _rand_matrix(rng, n)
    assert charpoly_exact(m) == _sympy_charpoly(m)


def test_charpoly_sparse_needs_pivot_swap():
    # zero subdiagonal pivots force the row/column swap path
    m = ExactMatrix([[0, 0, 1, 0], [0, 0, 0, 1], [1, 0, 0, 0], [0, 1, 0, 0]])
    assert charpoly_exact(m) == (t ** 2 - 1) ** 2


def test_charpoly_trivial():
    assert charpoly_exact(ExactMatrix([])) == ONE
    assert charpoly_exact(ExactMatrix.identity(3)) == (t - 1) ** 3


@pytest.mark.parametrize("seed", range(10))
def test_mat_mul_associative(seed):
    rng = random.Random(seed)
    a, b, c = (_rand_matrix(rng, 4) for _ in range(3))
    assert mat_mul(mat_mul(a, b), c) == mat_mul(a, mat_mul(b, c))
    assert a * ExactMatrix.identity(4) == a


def test_dimension_error():
    with pytest.raises(DimensionError):
        ExactMatrix.identity(2) * ExactMatrix.identity(3)
    with pytest.raises(DimensionError):
        ExactMatrix([[1, 2]])


def test_permutation_helpers():
    p = ExactMatrix.from_permutation([2, 0, 1])
    assert p.is_permutation()
    assert p ** 3 == ExactMatrix.identity(3)
    assert p.row_sums() == [1, 1, 1] and p.col_sums() == [1, 1, 1]


# ---------- GF(2) bit matrices

def test_bitmatrix_basic():
    m = BitMatrix.from_strings(["0011", "0011", "1100", "1100"])
    assert m.get(0, 2) == 1 and m.get(0, 0) == 0
    assert (m @ m).to_lists() == [[0] * 4] * 4
    assert bitmat_power_until_zero(m, 4) == 2
    assert bitmat_power_until_zero(BitMatrix.zero(3), 3) == 1
    assert bitmat_power_until_zero(BitMatrix.identity(3), 3) is None


def _strictly_upper(rng, n):
    return BitMatrix.from_lists([[rng.randint(0, 1) if j > i else 0 for j in range(n)]
                                 for i in range(n)])


def _naive_index(m: BitMatrix, cap: int):
    p = m
    for e in range(1, cap + 1):
        if p.is_zero():
            return e
        p = p @ m
    return None


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 16), st.randoms(use_true_random=False), st.booleans())
def test_nilpotency_index_property(n, rng, upper):
    if upper:
        m = _strictly_upper(rng, n)
    else:
        m = BitMatrix.from_lists([[rng.randint(0, 1) for _ in range(n)] for _ in range(n)])
    idx = bitmat_power_until_zero(m, n)
    assert idx == _naive_index(m, n)
    if upper:
        assert idx is not None and idx <= n
    if idx is not None:
        assert bitmat_pow(m, idx).is_zero()
        assert idx == 1 or not bitmat_pow(m, idx - 1).is_zero()


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 8), st.integers(1, 6), st.randoms(use_true_random=False))
def test_parity_transport(n, e, rng):
    # integer power reduced mod 2 equals the GF(2) power
    ints = [[rng.randint(-3, 5) for _ in range(n)] for _ in range(n)]
    big = ExactMatrix(ints) ** e
    bits = bitmat_pow(BitMatrix.from_lists([[v % 2 for v in row] for row in ints]), e)
    assert bits.to_lists() == [[int(v) % 2 for v in row] for row in big.rows]


def test_bitmat_mul_against_lists():
    rng = random.Random(3)
    a = BitMatrix.from_lists([[rng.randint(0, 1) for _ in range(9)] for _ in range(9)])
    b = BitMatrix.from_lists([[rng.randint(0, 1) for _ in range(9)] for _ in range(9)])
    la, lb = a.to_lists(), b.to_lists()
    expect = [[sum(la[i][l] * lb[l][j] for l in range(9)) % 2 for j in range(9)] for i in range(9)]
    assert bitmat_mul(a, b).to_lists() == expect
