"""Gram representations of symmetric polynomials over a border monomial basis.

A symmetric polynomial p of degree <= 2d can be written V^T M V where V
is the column of all words of degree <= d (the border basis) and M is a
symmetric matrix.  M is determined only up to an affine family: for each
word w, the sum of M over the ordered index pairs (i, j) with
basis[i]* . basis[j] = w must equal the coefficient of w in p.  Those
pair groups partition the full index square, which is what makes the
per-group feasibility projection in the certification module a closed
form.

Words of maximal degree 2d split as u* . v with both halves of degree d
in exactly one way, so their group is a single entry of M; that forced
entry is the backbone of the exact non-SoS obstruction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import numpy as np

from .freealg import NcPoly, VarContext, Word, word_key, word_star

DEFAULT_DEGREE_LIMIT = 6
DEFAULT_SIZE_LIMIT = 20000


class BasisLimitError(ValueError):
    """Requested border basis exceeds the configured degree or size limit."""


@dataclass(frozen=True, eq=False)
class BorderBasis:
    """All words of degree <= max_degree, in canonical order."""

    context: VarContext
    max_degree: int
    words: tuple[Word, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "_index", {w: i for i, w in enumerate(self.words)})

    def __len__(self) -> int:
        return len(self.words)

    def index(self, w: Word) -> int:
        return self._index[w]


def letter_count(ctx: VarContext) -> int:
    """Distinct letters: 1 per self-adjoint variable, 2 per adjoint pair."""
    return sum(1 if sa else 2 for sa in ctx.selfadjoint)


def border_basis(
    ctx: VarContext,
    d: int,
    *,
    degree_limit: int = DEFAULT_DEGREE_LIMIT,
    size_limit: int = DEFAULT_SIZE_LIMIT,
) -> BorderBasis:
    """Enumerate the border basis V^d, guarded by degree and size limits."""
    if d < 0:
        raise ValueError("basis degree must be nonnegative")
    if d > degree_limit:
        raise BasisLimitError(f"basis degree {d} exceeds limit {degree_limit}")
    letters = ctx.letters()
    size = sum(len(letters) ** k for k in range(d + 1))
    if size > size_limit:
        raise BasisLimitError(f"basis size {size} exceeds limit {size_limit}")
    words: list[Word] = [Word()]
    layer: list[Word] = [Word()]
    for _ in range(d):
        layer = [w.concat(Word((l,))) for w in layer for l in letters]
        layer.sort(key=word_key)
        words.extend(layer)
    return BorderBasis(ctx, d, tuple(words))


@dataclass(frozen=True, eq=False)
class GramMatrix:
    """A symmetric matrix over a border basis; exact (Fraction) or float entries."""

    basis: BorderBasis
    entries: tuple[tuple[Fraction | float, ...], ...]
    exact: bool

    def __post_init__(self) -> None:
        n = len(self.basis)
        if len(self.entries) != n or any(len(row) != n for row in self.entries):
            raise ValueError("entry matrix does not match basis size")
        for i in range(n):
            for j in range(i + 1, n):
                if self.entries[i][j] != self.entries[j][i]:
                    raise ValueError("Gram matrix must be symmetric")

    @property
    def n(self) -> int:
        return len(self.basis)

    def as_array(self) -> np.ndarray:
        return np.array([[float(x) for x in row] for row in self.entries], dtype=float)

    @classmethod
    def from_rows(cls, basis: BorderBasis, rows: Sequence[Sequence[Fraction]]) -> "GramMatrix":
        return cls(basis, tuple(tuple(Fraction(x) for x in row) for row in rows), exact=True)

    @classmethod
    def from_array(cls, basis: BorderBasis, arr: np.ndarray) -> "GramMatrix":
        sym = (arr + arr.T) * 0.5
        return cls(basis, tuple(tuple(float(x) for x in row) for row in sym), exact=False)


@dataclass(frozen=True)
class GramGroup:
    """Ordered index pairs producing one word, with its target coefficient."""

    word: Word
    pairs: tuple[tuple[int, int], ...]
    target: Fraction


@dataclass(frozen=True, eq=False)
class AffineGramSpace:
    """The full affine family of Gram matrices of a symmetric polynomial."""

    basis: BorderBasis
    groups: tuple[GramGroup, ...]


def _require_symmetric(p: NcPoly, what: str) -> None:
    if not p.is_symmetric():
        raise ValueError(f"{what} requires a symmetric polynomial")


def _require_degree(p: NcPoly, d: int) -> None:
    deg = p.degree()
    if deg is not None and deg > 2 * d:
        raise ValueError(f"polynomial degree {deg} exceeds 2*d = {2 * d}")


def default_basis_degree(p: NcPoly) -> int:
    """d = ceil(deg(p)/2); 0 for the zero polynomial."""
    deg = p.degree()
    if deg is None:
        return 0
    return (deg + 1) // 2


def gram_space(p: NcPoly, d: int, **basis_limits) -> AffineGramSpace:
    """Group every ordered basis pair by the word it produces, with targets from p."""
    _require_symmetric(p, "gram_space")
    _require_degree(p, d)
    basis = border_basis(p.context, d, **basis_limits)
    ctx = p.context
    stars = [word_star(ctx, w) for w in basis.words]
    by_word: dict[Word, list[tuple[int, int]]] = {}
    for i, si in enumerate(stars):
        for j, wj in enumerate(basis.words):
            w = si.concat(wj)
            by_word.setdefault(w, []).append((i, j))
    groups = tuple(
        GramGroup(w, tuple(pairs), p.coeff(w))
        for w, pairs in sorted(by_word.items(), key=lambda kv: word_key(kv[0]))
    )
    return AffineGramSpace(basis, groups)


def reconstruct(m: GramMatrix) -> NcPoly:
    """The polynomial sum_{i,j} M(i,j) basis[i]* basis[j]; exact in exact mode."""
    ctx = m.basis.context
    stars = [word_star(ctx, w) for w in m.basis.words]
    terms: dict[Word, Fraction] = {}
    for i, si in enumerate(stars):
        row = m.entries[i]
        for j, wj in enumerate(m.basis.words):
            c = row[j]
            if c:
                w = si.concat(wj)
                terms[w] = terms.get(w, Fraction(0)) + Fraction(c)
    return NcPoly(ctx, terms)


def canonical_gram(p: NcPoly, d: int | None = None, **basis_limits) -> GramMatrix:
    """One deterministic member of the affine family.

    Each word w of p puts its full coefficient on the half split
    (u, v) = (star of the first floor(|w|/2) letters, the rest); the
    matrix is then symmetrized, which keeps the reconstruction exact.
    """
    if d is None:
        d = default_basis_degree(p)
    _require_symmetric(p, "canonical_gram")
    _require_degree(p, d)
    basis = border_basis(p.context, d, **basis_limits)
    ctx = p.context
    n = len(basis)
    rows = [[Fraction(0)] * n for _ in range(n)]
    for w, c in p.terms.items():
        half = len(w) // 2
        u = word_star(ctx, Word(w.letters[:half]))
        v = Word(w.letters[half:])
        rows[basis.index(u)][basis.index(v)] += c
    half_sum = [
        [(rows[i][j] + rows[j][i]) / 2 for j in range(n)] for i in range(n)
    ]
    return GramMatrix.from_rows(basis, half_sum)


def unique_top_split(ctx: VarContext, w: Word, d: int) -> tuple[Word, Word]:
    """The only (u, v) with |u| = |v| = d and u* . v = w, for |w| = 2d."""
    if len(w) != 2 * d:
        raise ValueError(f"word length {len(w)} is not 2*d = {2 * d}")
    u = word_star(ctx, Word(w.letters[:d]))
    v = Word(w.letters[d:])
    return u, v
