"""Shared seeded generators for the property tests."""

from __future__ import annotations

import random
from fractions import Fraction

from ncsos.freealg import NcPoly, VarContext, Word


def nonzero_fraction(rng: random.Random, span: int = 5, max_den: int = 4) -> Fraction:
    num = rng.choice([n for n in range(-span, span + 1) if n])
    return Fraction(num, rng.randint(1, max_den))


def random_word(ctx: VarContext, rng: random.Random, max_degree: int = 3) -> Word:
    letters = ctx.letters()
    length = rng.randint(0, max_degree)
    return Word(tuple(rng.choice(letters) for _ in range(length)))


def random_poly(
    ctx: VarContext,
    rng: random.Random,
    max_degree: int = 3,
    max_terms: int = 4,
    allow_zero: bool = False,
) -> NcPoly:
    while True:
        terms: dict[Word, Fraction] = {}
        for _ in range(rng.randint(0 if allow_zero else 1, max_terms)):
            w = random_word(ctx, rng, max_degree)
            terms[w] = terms.get(w, Fraction(0)) + nonzero_fraction(rng)
        p = NcPoly(ctx, terms)
        if allow_zero or not p.is_zero():
            return p


def random_symmetric_poly(
    ctx: VarContext, rng: random.Random, max_degree: int = 3
) -> NcPoly:
    while True:
        p = random_poly(ctx, rng, max_degree)
        sym = p + p.star()
        if not sym.is_zero():
            return sym


def doctored_not_sos_poly(ctx: VarContext, rng: random.Random) -> NcPoly:
    """Random symmetric polynomial forced to carry a negative top v*v word.

    The base polynomial has degree <= 3, the added word star(v).v has
    degree 4, so the negative diagonal sits at the maximal degree.
    """
    from ncsos.freealg import word_star

    base = random_symmetric_poly(ctx, rng, max_degree=3)
    v = Word(tuple(rng.choice(ctx.letters()) for _ in range(2)))
    w = word_star(ctx, v).concat(v)
    target = Fraction(-rng.randint(1, 4))
    return base + NcPoly.monomial(ctx, w, target - base.coeff(w))
