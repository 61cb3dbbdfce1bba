import random
from fractions import Fraction

import pytest

from conftest import random_poly
from ncsos.counterexamples import (
    ADJOINT_PAIR,
    TWO_SELFADJOINT,
    adjoint_commutator_poly,
    crossing_poly,
)
from ncsos.freealg import NcPoly
from ncsos.ncparse import (
    PolyParseError,
    parse,
    parse_var_context,
    print_canonical,
    word_str,
)

CTX = TWO_SELFADJOINT


def test_parse_crossing_poly():
    assert parse("X1*X2*X2*X1 - X2*X1*X1*X2 + 1", CTX) == crossing_poly()


def test_parse_unit():
    assert parse("1", CTX) == NcPoly.one(CTX)
    assert parse("0", CTX) == NcPoly.zero(CTX)


def test_parse_adjoint_pair():
    assert parse("X*X' - X'*X + 1", ADJOINT_PAIR) == adjoint_commutator_poly()


def test_parse_rationals_and_powers():
    p = parse("1/2*X1^2 - 0.25", CTX)
    from ncsos.freealg import Letter, Word

    xx = Word((Letter(0, False), Letter(0, False)))
    assert p.coeff(xx) == Fraction(1, 2)
    assert p.coeff(Word()) == Fraction(-1, 4)
    # coefficient juxtaposed to a factor (the '*' is optional there)
    assert parse("2X1", CTX) == 2 * NcPoly.variable(CTX, 0)


def test_parse_parenthesized_adjoint():
    p = parse("(1 + X*X')'", ADJOINT_PAIR)
    assert p == parse("1 + X*X'", ADJOINT_PAIR)
    q = parse("(X*X)'", ADJOINT_PAIR)
    assert q == parse("X'*X'", ADJOINT_PAIR)


def test_parse_leading_sign():
    assert parse("-X1 + 1", CTX) == NcPoly.one(CTX) - NcPoly.variable(CTX, 0)


def test_parse_errors_carry_offsets():
    with pytest.raises(PolyParseError) as exc:
        parse("1 + ", CTX)
    assert exc.value.offset == 4
    with pytest.raises(PolyParseError) as exc:
        parse("X1*X9", CTX)
    assert exc.value.offset == 3
    with pytest.raises(PolyParseError):
        parse("X1'", CTX)  # adjoint marker on a self-adjoint variable
    with pytest.raises(PolyParseError):
        parse("1/0", CTX)
    with pytest.raises(PolyParseError):
        parse("X1 @ X2", CTX)
    with pytest.raises(PolyParseError):
        parse("X1 X2 )", CTX)


def test_parse_var_context():
    ctx = parse_var_context("X1,X2")
    assert ctx.names == ("X1", "X2") and ctx.selfadjoint == (True, True)
    ctx = parse_var_context("X'")
    assert ctx.names == ("X",) and ctx.selfadjoint == (False,)
    ctx = parse_var_context("A, B', C")
    assert ctx.selfadjoint == (True, False, True)
    with pytest.raises(ValueError):
        parse_var_context("A,,B")


def test_print_canonical_examples():
    # canonical graded order puts X1X2X2X1 before X2X1X1X2
    assert print_canonical(crossing_poly()) == "1 + X1*X2*X2*X1 - X2*X1*X1*X2"
    assert print_canonical(NcPoly.zero(CTX)) == "0"
    assert print_canonical(parse("X1^2", CTX)) == "X1*X1"
    assert print_canonical(parse("-1 - 2*X1 + 1/2*X2", CTX)) == "-1 - 2*X1 + 1/2*X2"


def test_word_str_empty():
    from ncsos.freealg import Word

    assert word_str(CTX, Word()) == "1"


def test_round_trip_random():
    rng = random.Random(3)
    for ctx in (CTX, ADJOINT_PAIR):
        for _ in range(150):
            p = random_poly(ctx, rng, max_degree=4, max_terms=5)
            assert parse(print_canonical(p), ctx) == p


def test_print_parse_idempotent():
    rng = random.Random(4)
    for _ in range(100):
        p = random_poly(CTX, rng)
        text = print_canonical(p)
        assert print_canonical(parse(text, CTX)) == text
