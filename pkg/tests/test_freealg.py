import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from selfsimilar.arith import GF2, QQ, FieldMismatchError, PrimeField
from selfsimilar.freealg import (
    Generator,
    NcPolynomial,
    PolyParseError,
    format_poly,
    format_word,
    parse_poly,
    rle_decode,
    rle_encode,
    substitute,
    subst_xy_yx,
    swap_xy,
    words_of_length,
)

F3 = PrimeField(3)

words = st.text(alphabet="xy", max_size=5)


def polys(field):
    if field is QQ:
        coeff = st.fractions(min_value=-3, max_value=3, max_denominator=3)
    else:
        coeff = st.integers(0, field.p - 1)
    return st.dictionaries(words, coeff, max_size=4).map(lambda d: NcPolynomial(d, field))


fields = st.sampled_from([QQ, GF2, F3])


@st.composite
def poly_triples(draw):
    f = draw(fields)
    return tuple(draw(polys(f)) for _ in range(3))


# ---------- ring axioms

@settings(max_examples=150, deadline=None)
@given(poly_triples())
def test_ring_axioms(triple):
    p, q, r = triple
    zero, one = NcPolynomial.zero(p.field), NcPolynomial.one(p.field)
    assert (p + q) + r == p + (q + r)
    assert p + q == q + p
    assert p + zero == p and p - p == zero
    assert (p * q) * r == p * (q * r)
    assert p * one == p == one * p
    assert p * (q + r) == p * q + p * r
    assert (p + q) * r == p * r + q * r


def test_noncommutative():
    x, y = NcPolynomial.gen("x"), NcPolynomial.gen("y")
    assert x * y != y * x


def test_characteristic_two():
    one_x = parse_poly("1 + x", GF2)
    assert one_x ** 2 == parse_poly("1 + x^2", GF2)
    assert parse_poly("x + x", GF2).is_zero()
    assert parse_poly("2x", F3) == parse_poly("-x", F3)


def test_field_mismatch():
    with pytest.raises(FieldMismatchError):
        parse_poly("x", GF2) + parse_poly("x", F3)


# ---------- parse / format

def test_format_examples():
    s = parse_poly("1+x^2yx^2+yx^2y", GF2)
    assert format_poly(s) == "1 + y*x^2*y + x^2*y*x^2"
    assert s.degree() == 5
    assert format_poly(parse_poly("0")) == "0"
    assert format_poly(parse_poly("x*y + y*x")) == "x*y + y*x"
    assert format_poly(parse_poly("1/2 x - 3 y")) == "1/2*x - 3*y"
    assert format_word("") == "1"
    assert format_word("xxyxx") == "x^2*y*x^2"


def test_parse_errors():
    for bad in ["x+", "x^", "z", "(x", "1/0x"]:
        with pytest.raises(PolyParseError):
            parse_poly(bad)
    with pytest.raises(PolyParseError):
        parse_poly("1/2 x", GF2)


@settings(max_examples=200, deadline=None)
@given(fields.flatmap(polys))
def test_parse_format_roundtrip(p):
    text = format_poly(p)
    assert parse_poly(text, p.field) == p
    assert format_poly(parse_poly(text, p.field)) == text


# ---------- substitutions

@settings(max_examples=100, deadline=None)
@given(poly_triples(), st.data())
def test_substitute_is_morphism(pqr, data):
    p, q, _ = pqr
    f = p.field
    # short images keep the expansion small
    small = st.dictionaries(st.text(alphabet="xy", max_size=2), st.integers(-2, 2), max_size=2)
    ix = NcPolynomial(data.draw(small), f)
    iy = NcPolynomial(data.draw(small), f)

    def sub(t):
        return substitute(t, ix, iy)

    assert sub(p * q) == sub(p) * sub(q)
    assert sub(p + q) == sub(p) + sub(q)
    assert sub(NcPolynomial.one(f)) == NcPolynomial.one(f)


@settings(max_examples=100, deadline=None)
@given(fields.flatmap(polys))
def test_swap_involution(p):
    assert swap_xy(swap_xy(p)) == p
    x, y = NcPolynomial.gen("x", p.field), NcPolynomial.gen("y", p.field)
    assert swap_xy(p) == substitute(p, y, x)


def test_subst_xy_yx():
    p = parse_poly("1 + xy", GF2)
    assert subst_xy_yx(p) == parse_poly("1 + xyyx", GF2)
    # injective on words of length up to 6
    seen = set()
    for n in range(7):
        for w in words_of_length(n):
            img = subst_xy_yx(NcPolynomial.monomial(w))
            assert img not in seen
            seen.add(img)


# ---------- run-length encoding

def test_rle_example():
    assert rle_encode("xyyxxxxyyy") == [(Generator.X, 1), (Generator.Y, 2),
                                        (Generator.X, 4), (Generator.Y, 3)]
    assert rle_encode("") == []


def test_rle_roundtrip_random_words():
    rng = random.Random(2024)
    for _ in range(1000):
        w = "".join(rng.choice("xy") for _ in range(rng.randint(0, 40)))
        runs = rle_encode(w)
        assert rle_decode(runs) == w
        assert all(runs[i][0] != runs[i + 1][0] for i in range(len(runs) - 1))


def test_rle_decode_rejects_bad_runs():
    with pytest.raises(ValueError):
        rle_decode([("x", 0)])
    with pytest.raises(ValueError):
        rle_decode([("x", 1), ("x", 2)])


def test_eval_ones():
    assert parse_poly("1/2 x + 1/2 y").eval_ones() == 1
    assert parse_poly("x + y + xy", GF2).eval_ones() == 1
    assert parse_poly("3 x y - x", QQ).eval_ones() == Fraction(2)
