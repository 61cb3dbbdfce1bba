import random
from fractions import Fraction

import pytest

from conftest import random_poly
from ncsos.counterexamples import ADJOINT_PAIR, TWO_SELFADJOINT, crossing_poly
from ncsos.freealg import (
    ContextMismatchError,
    Letter,
    NcPoly,
    VarContext,
    Word,
    word_compare,
    word_key,
    word_star,
)

CTX = TWO_SELFADJOINT


def w(*indices: int) -> Word:
    return Word(tuple(Letter(i, False) for i in indices))


def test_context_validation():
    with pytest.raises(ValueError):
        VarContext(("X", "X"), (True, True))
    with pytest.raises(ValueError):
        VarContext(("2bad",), (True,))
    with pytest.raises(ValueError):
        VarContext(("A",), (True, False))
    with pytest.raises(ValueError):
        CTX.letter(0, starred=True)  # self-adjoint variables have no star letter


def test_word_star_examples():
    assert word_star(CTX, w(0, 1)) == w(1, 0)
    assert word_star(CTX, Word()) == Word()
    ctx = ADJOINT_PAIR
    yy = Word((ctx.letter(0), ctx.letter(0, True)))  # Y Y'
    assert word_star(ctx, yy) == yy  # (Y Y')* = Y Y'


def test_word_star_involutive():
    rng = random.Random(11)
    for ctx in (CTX, ADJOINT_PAIR):
        letters = ctx.letters()
        for _ in range(200):
            word = Word(tuple(rng.choice(letters) for _ in range(rng.randint(0, 5))))
            assert word_star(ctx, word_star(ctx, word)) == word


def test_poly_mul_examples():
    a = NcPoly.monomial(CTX, w(0, 1))
    b = NcPoly.monomial(CTX, w(1, 0))
    assert a * b == NcPoly.monomial(CTX, w(0, 1, 1, 0))

    x1 = NcPoly.variable(CTX, 0)
    one = NcPoly.one(CTX)
    assert (one + x1) * (one - x1) == one - NcPoly.monomial(CTX, w(0, 0))

    f = crossing_poly()
    # hand-expanded X1 f X1: three terms, frozen
    expected = NcPoly(
        CTX,
        {
            w(0, 0, 1, 1, 0, 0): Fraction(1),
            w(0, 1, 0, 0, 1, 0): Fraction(-1),
            w(0, 0): Fraction(1),
        },
    )
    assert x1 * f * x1 == expected
    assert (x1 * f * x1).degree() == 6


def test_poly_star_examples():
    assert NcPoly.monomial(CTX, w(0, 1)).star() == NcPoly.monomial(CTX, w(1, 0))
    f = crossing_poly()
    assert f.star() == f
    p = NcPoly(CTX, {w(0, 1): Fraction(3), w(1): Fraction(-2)})
    assert p.star() == NcPoly(CTX, {w(1, 0): Fraction(3), w(1): Fraction(-2)})


def test_is_symmetric_examples():
    assert crossing_poly().is_symmetric()
    assert not NcPoly.monomial(CTX, w(0, 1)).is_symmetric()
    from ncsos.counterexamples import adjoint_commutator_poly

    assert adjoint_commutator_poly().is_symmetric()


def test_degree_examples():
    assert crossing_poly().degree() == 4
    assert NcPoly.one(CTX).degree() == 0
    assert NcPoly.zero(CTX).degree() is None


def test_word_compare_examples():
    assert word_compare(Word(), w(0)) == -1
    assert word_compare(w(0, 1), w(1, 0)) == -1
    assert word_compare(w(0, 1), w(0, 1)) == 0
    # all 7 words of degree <= 2 over {X1, X2}, sorted by the stated rule
    all_words = [Word()]
    for a in range(2):
        all_words.append(w(a))
    for a in range(2):
        for b in range(2):
            all_words.append(w(a, b))
    assert sorted(all_words, key=word_key) == [
        Word(),
        w(0),
        w(1),
        w(0, 0),
        w(0, 1),
        w(1, 0),
        w(1, 1),
    ]


def test_context_mismatch_rejected():
    other = VarContext(("Y",), (True,))
    with pytest.raises(ContextMismatchError):
        NcPoly.one(CTX) * NcPoly.one(other)


def test_involution_laws():
    rng = random.Random(5)
    for ctx in (CTX, ADJOINT_PAIR):
        for _ in range(150):
            p = random_poly(ctx, rng)
            q = random_poly(ctx, rng)
            assert p.star().star() == p
            assert (p * q).star() == q.star() * p.star()
            assert (p + q).star() == p.star() + q.star()


def test_ring_laws():
    rng = random.Random(6)
    one = NcPoly.one(CTX)
    for _ in range(100):
        p = random_poly(CTX, rng, max_degree=2)
        q = random_poly(CTX, rng, max_degree=2)
        r = random_poly(CTX, rng, max_degree=2)
        assert (p * q) * r == p * (q * r)
        assert p * (q + r) == p * q + p * r
        assert (p + q) * r == p * r + q * r
        assert one * p == p and p * one == p


def test_degree_multiplicative():
    rng = random.Random(7)
    for _ in range(150):
        p = random_poly(CTX, rng)
        q = random_poly(CTX, rng)
        assert (p * q).degree() == p.degree() + q.degree()


def test_symmetric_coefficients_pair_up():
    rng = random.Random(8)
    for _ in range(100):
        p = random_poly(CTX, rng)
        sym = p + p.star()
        for word, coeff in sym.terms.items():
            assert sym.coeff(word_star(CTX, word)) == coeff


def test_coefficients_stay_exact():
    p = NcPoly(CTX, {w(0): Fraction(1, 3)})
    assert (p + p + p).coeff(w(0)) == 1
    assert (3 * p).coeff(w(0)) == 1
    assert (p - p).is_zero()
