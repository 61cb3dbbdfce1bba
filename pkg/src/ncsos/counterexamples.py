"""The two bundled counterexample polynomials and their contexts.

Both are star-commutators shifted by one: w w* - w* w + 1 for a word w.
With w = X1*X2 over two self-adjoint variables this is the quartic

    X1*X2*X2*X1 - X2*X1*X1*X2 + 1

whose evaluations at symmetric matrices are never negative semidefinite,
yet whose maximal word X2*X1*X1*X2 carries coefficient -1 and therefore
forces a negative diagonal in every Gram representative - of the
polynomial itself and of every conjugated combination of it.  With
w = X over a single non-self-adjoint variable the same shape gives

    X*X' - X'*X + 1

which behaves the same at bounded (matrix) arguments but is defeated by
the truncated weighted shift in the operator-evaluation module.
"""

from __future__ import annotations

from .freealg import NcPoly, VarContext, Word

TWO_SELFADJOINT = VarContext(("X1", "X2"), (True, True))
ADJOINT_PAIR = VarContext(("X",), (False,))


def star_commutator_plus_one(ctx: VarContext, w: Word) -> NcPoly:
    """w w* - w* w + 1 as an exact polynomial."""
    m = NcPoly.monomial(ctx, w)
    ms = m.star()
    return m * ms - ms * m + NcPoly.one(ctx)


def crossing_poly() -> NcPoly:
    """X1*X2*X2*X1 - X2*X1*X1*X2 + 1 over two self-adjoint variables."""
    ctx = TWO_SELFADJOINT
    w = Word((ctx.letter(0), ctx.letter(1)))
    return star_commutator_plus_one(ctx, w)


def adjoint_commutator_poly() -> NcPoly:
    """X*X' - X'*X + 1 over one adjoint pair."""
    ctx = ADJOINT_PAIR
    w = Word((ctx.letter(0),))
    return star_commutator_plus_one(ctx, w)
