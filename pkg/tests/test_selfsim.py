import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from selfsimilar.arith import GF2, QQ, ExactMatrix, PrimeField
from selfsimilar.freealg import NcPolynomial, parse_poly, rle_encode
from selfsimilar.selfsim import (
    LETTERS,
    AlgMatrix,
    LevelCapError,
    MorphismParams,
    act,
    act_word,
    generator_matrix_at_ones,
    generator_permutations,
    parse_letters,
    psi,
    psi_iter,
    rle_correspondence_check,
)
from selfsimilar.spectra import m_k


def P(text, field=GF2):
    return parse_poly(text, field)


def M(rows, field=GF2):
    return AlgMatrix([[P(e, field) for e in row] for row in rows], field)


# ---------- reference images

REFERENCE = [
    ("1+x^2yx^2+yx^2y", [["1+yx", "xy^2x"], ["yx^2y", "1+xy"]]),
    ("1+yx", [["1+y", "0"], ["0", "1+x"]]),
    ("1+xy", [["1+x", "0"], ["0", "1+y"]]),
    ("xy^2x", [["xy", "0"], ["0", "yx"]]),
    ("yx^2y", [["yx", "0"], ["0", "xy"]]),
    ("xy", [["x", "0"], ["0", "y"]]),
    ("yx", [["y", "0"], ["0", "x"]]),
    ("1+x", [["1", "x"], ["y", "1"]]),
    ("1+y", [["1", "1"], ["1", "1"]]),
]


@pytest.mark.parametrize("s, image", REFERENCE)
def test_reference_images(s, image):
    assert psi(P(s)) == M(image)


def test_reference_word():
    s = P("1+x^2yx^2+yx^2y")
    assert act_word(s, parse_letters("(0,0)(1,1)(0,1)")) == P("x")
    assert act(s, (0, 0)) == P("1+yx")
    assert act(P("1"), (0, 1)).is_zero()


def test_generator_images():
    for a in range(4):
        for b in range(4):
            pr = MorphismParams(a, b)
            x, y = NcPolynomial.gen("x"), NcPolynomial.gen("y")
            X, Y = NcPolynomial.monomial("x" * a), NcPolynomial.monomial("y" * a)
            assert psi(x, pr) == AlgMatrix([[NcPolynomial.zero(), X], [Y, NcPolynomial.zero()]])
            X, Y = NcPolynomial.monomial("x" * b), NcPolynomial.monomial("y" * b)
            assert psi(y, pr) == AlgMatrix([[NcPolynomial.zero(), X], [Y, NcPolynomial.zero()]])


def test_params_validation():
    with pytest.raises(ValueError):
        MorphismParams(-1, 0)
    with pytest.raises(ValueError):
        parse_letters("(0,2)")
    with pytest.raises(LevelCapError):
        psi_iter(P("x"), 13)


# ---------- morphism laws

words = st.text(alphabet="xy", max_size=4)
coeffs = st.integers(-2, 2)
params_st = st.builds(MorphismParams, st.integers(0, 3), st.integers(0, 3))
fields = st.sampled_from([QQ, GF2, PrimeField(3)])


@st.composite
def pair(draw):
    f = draw(fields)
    p = NcPolynomial(draw(st.dictionaries(words, coeffs, max_size=4)), f)
    q = NcPolynomial(draw(st.dictionaries(words, coeffs, max_size=4)), f)
    return p, q


@settings(max_examples=200, deadline=None)
@given(pair(), params_st)
def test_psi_is_algebra_morphism(pq, params):
    p, q = pq
    assert psi(p * q, params) == psi(p, params) * psi(q, params)
    assert psi(p + q, params) == psi(p, params) + psi(q, params)
    assert psi(NcPolynomial.one(p.field), params) == AlgMatrix.identity(2, p.field)


letter_words = st.lists(st.sampled_from(LETTERS), max_size=5)


@settings(max_examples=200, deadline=None)
@given(pair(), letter_words, letter_words)
def test_action_associativity(pq, u, v):
    s, _ = pq
    assert act_word(s, u + v) == act_word(act_word(s, u), v)


@settings(max_examples=100, deadline=None)
@given(pair(), st.sampled_from(LETTERS))
def test_action_on_products(pq, letter):
    s, t = pq
    i, j = letter
    expected = sum((act(s, (i, l)) * act(t, (l, j)) for l in (0, 1)), NcPolynomial.zero(s.field))
    assert act(s * t, letter) == expected


# ---------- iteration

@pytest.mark.parametrize("k", range(0, 5))
def test_psi_iter_entries_are_action_paths(k):
    # entry (i, j) of psi^(k)(s) is s acted on by the digit pairs of i and j
    s = P("1+x^2yx^2+yx^2y")
    m = psi_iter(s, k)
    n = 2 ** k
    for i in range(n):
        for j in range(n):
            letters = [((i >> (k - 1 - d)) & 1, (j >> (k - 1 - d)) & 1) for d in range(k)]
            assert m[i, j] == act_word(s, letters)


def test_psi_iter_block_law():
    s = P("1+x+yx")
    m1 = psi(s)
    m3 = psi_iter(s, 3)
    expect = AlgMatrix.blocks([[psi_iter(m1[i, j], 2) for j in (0, 1)] for i in (0, 1)])
    assert m3 == expect


@pytest.mark.parametrize("a,b", [(1, 0), (1, 2), (0, 0), (2, 3), (3, 3)])
@pytest.mark.parametrize("k", range(0, 6))
def test_psi_iter_at_ones_matches_m_k(a, b, k):
    half = parse_poly("1/2 x + 1/2 y", QQ)
    assert psi_iter(half, k, MorphismParams(a, b)).eval_ones() == m_k(a, b, k)


@pytest.mark.parametrize("k", range(0, 9))
def test_generator_matrices_are_permutations(k):
    for a, b in [(1, 0), (1, 2), (2, 0), (3, 4)]:
        pr = MorphismParams(a, b)
        A = generator_matrix_at_ones("x", k, pr)
        B = generator_matrix_at_ones("y", k, pr)
        assert A.is_permutation() and B.is_permutation()
        assert m_k(a, b, k).scale(2) == A + B
        if k <= 5:
            assert psi_iter(NcPolynomial.gen("x"), k, pr).eval_ones() == A
            assert psi_iter(NcPolynomial.gen("y"), k, pr).eval_ones() == B


def test_generator_permutations_level_one():
    assert generator_permutations(1) == ([1, 0], [1, 0])


# ---------- run-length correspondence

def test_rle_example_one():
    v = rle_correspondence_check("xyyxxxxyyy", MorphismParams(1, 2))
    assert v.holds
    assert v.runs == (1, 2, 4, 3)
    assert v.w1 == "xyyxxyxyxyyxxyy"
    assert v.w2 == "yxxyyxyxyxxyyxx"
    assert v.block_exponents == (1, 2, 2, 1, 1, 1, 1, 2, 2, 2)


@pytest.mark.parametrize("ab", [(1, 2), (2, 3), (1, 3)])
def test_rle_random_words(ab):
    rng = random.Random(100 * ab[0] + ab[1])
    params = MorphismParams(*ab)
    for _ in range(500):
        z = "".join(rng.choice("xy") for _ in range(rng.randint(1, 24)))
        v = rle_correspondence_check(z, params)
        assert v.holds, v.detail
        assert v.runs == tuple(n for _, n in rle_encode(z))


def test_rle_preconditions():
    with pytest.raises(ValueError):
        rle_correspondence_check("xy", MorphismParams(2, 2))
    with pytest.raises(ValueError):
        rle_correspondence_check("", MorphismParams(1, 2))


def test_alg_matrix_eval_ones_type():
    assert isinstance(psi(P("1+x")).eval_ones(), ExactMatrix)
