"""Sum-of-squares membership decisions.

Two complementary routes:

* an exact obstruction on the top-degree coefficients that proves a
  symmetric polynomial is NOT a sum of hermitian squares (pure rational
  arithmetic, no floats), and

* a numerical feasibility search for a positive semidefinite member of
  the affine Gram family (Dykstra alternating projections between the
  PSD cone and the affine constraints), which on success extracts an
  explicit certificate sum_i g_i* g_i and re-verifies it symbolically.

Numerical non-convergence is only ever reported as inconclusive; the
refutation route stays exact.  The conjugation refuter applies the
obstruction to sum_i g_i* p g_i, which for the bundled counterexamples
kills every candidate certificate of the form 1 + SoS.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Sequence

import numpy as np

from .freealg import NcPoly, VarContext, Word, word_key, word_star
from .gram import (
    AffineGramSpace,
    GramMatrix,
    border_basis,
    canonical_gram,
    default_basis_degree,
    gram_space,
    unique_top_split,
)
from .numlin import SymMat, factor_psd, psd_project, sym_eigen

DEFAULT_ACCEPT_TOL = 1e-7
DEFAULT_CONVERGE_TOL = 1e-10
DEFAULT_MAX_ITERS = 20000


class ObstructionMissingError(RuntimeError):
    """A conjugated combination unexpectedly has no top-degree obstruction."""


class EmptyConjugatorsError(ValueError):
    """Conjugation needs at least one nonzero polynomial."""


class ObstructionKind(str, Enum):
    NEGATIVE_TOP_DIAGONAL = "NegativeTopDiagonal"
    ODD_TOP_DEGREE = "OddTopDegree"
    ZERO_DIAGONAL_NONZERO_ROW = "ZeroDiagonalNonzeroRow"


@dataclass(frozen=True)
class Obstruction:
    """Exact evidence that a polynomial is not a sum of hermitian squares.

    For NEGATIVE_TOP_DIAGONAL the witness is the diagonal basis word v:
    top_word = v* . v has the stated negative coefficient, so the forced
    diagonal entry of every Gram representative is negative.  For
    ZERO_DIAGONAL_NONZERO_ROW the witness is one of the two split words
    whose forced diagonal is zero while the forced off-diagonal entry
    (the stated coefficient) is not.
    """

    kind: ObstructionKind
    witness_word: Word
    top_word: Word
    coefficient: Fraction


@dataclass(frozen=True)
class Certificate:
    gs: tuple[NcPoly, ...]
    gram: GramMatrix
    residual: float
    iterations: int


@dataclass(frozen=True)
class NotSos:
    obstruction: Obstruction


@dataclass(frozen=True)
class Inconclusive:
    iterations: int
    final_gap: float
    min_eigenvalue: float


SosResult = Certificate | NotSos | Inconclusive


def top_obstruction(p: NcPoly) -> Obstruction | None:
    """Exact top-degree test; a returned obstruction proves p is not SoS.

    Rules, in order: odd degree; a maximal-degree word v*v with negative
    coefficient; a maximal-degree word whose unique top split (u, v) has
    u != v while both u*u and v*v are absent from p (forcing a zero
    diagonal against a nonzero off-diagonal entry).
    """
    if not p.is_symmetric():
        raise ValueError("top_obstruction requires a symmetric polynomial")
    deg = p.degree()
    if deg is None:
        raise ValueError("top_obstruction requires a nonzero polynomial")
    ctx = p.context
    top_words = sorted((w for w in p.terms if len(w) == deg), key=word_key)
    if deg % 2 == 1:
        w = top_words[0]
        return Obstruction(ObstructionKind.ODD_TOP_DEGREE, w, w, p.terms[w])
    d = deg // 2
    for w in top_words:
        if p.terms[w] < 0:
            v = Word(w.letters[d:])
            if word_star(ctx, v) == Word(w.letters[:d]):
                return Obstruction(
                    ObstructionKind.NEGATIVE_TOP_DIAGONAL, v, w, p.terms[w]
                )
    for w in top_words:
        u, v = unique_top_split(ctx, w, d)
        if u == v:
            continue
        uu = word_star(ctx, u).concat(u)
        vv = word_star(ctx, v).concat(v)
        if not p.coeff(uu) and not p.coeff(vv):
            return Obstruction(
                ObstructionKind.ZERO_DIAGONAL_NONZERO_ROW, u, w, p.terms[w]
            )
    return None


# -- numerical feasibility over the affine Gram family ----------------


def _compiled_groups(space: AffineGramSpace):
    """Index arrays per group for vectorized projection onto the affine family."""
    out = []
    for g in space.groups:
        rows = np.fromiter((i for i, _ in g.pairs), dtype=np.intp)
        cols = np.fromiter((j for _, j in g.pairs), dtype=np.intp)
        out.append((rows, cols, float(g.target), 1.0 / len(g.pairs)))
    return out


def _project_affine(m: np.ndarray, compiled) -> np.ndarray:
    """Closed-form orthogonal projection: groups partition the index square."""
    out = m.copy()
    for rows, cols, target, inv_len in compiled:
        delta = (target - float(out[rows, cols].sum())) * inv_len
        out[rows, cols] += delta
    return out


@dataclass(frozen=True)
class FeasibilitySearch:
    """Raw outcome of the Dykstra iteration, before certificate extraction."""

    matrix: np.ndarray
    iterations: int
    final_gap: float
    min_eigenvalue: float
    converged: bool


def psd_gram_search(
    p: NcPoly,
    d: int,
    *,
    converge_tol: float = DEFAULT_CONVERGE_TOL,
    max_iters: int = DEFAULT_MAX_ITERS,
) -> FeasibilitySearch:
    """Dykstra alternating projections between the PSD cone and the affine family.

    Starts from the canonical Gram representative.  Stops when successive
    affine-feasible iterates differ by <= converge_tol in Frobenius norm,
    or after max_iters.  Cannot certify infeasibility.
    """
    space = gram_space(p, d)
    compiled = _compiled_groups(space)
    x = canonical_gram(p, d).as_array()
    p_corr = np.zeros_like(x)
    q_corr = np.zeros_like(x)
    gap = float("inf")
    iterations = 0
    converged = False
    for iterations in range(1, max_iters + 1):
        y = psd_project(SymMat.from_array(x + p_corr)).a
        p_corr = x + p_corr - y
        x_new = _project_affine(y + q_corr, compiled)
        q_corr = y + q_corr - x_new
        gap = float(np.linalg.norm(x_new - x))
        x = x_new
        if gap <= converge_tol:
            converged = True
            break
    vals, _ = sym_eigen(SymMat.from_array(x))
    return FeasibilitySearch(x, iterations, gap, float(vals[-1]), converged)


def _float_terms(p: NcPoly) -> dict[Word, float]:
    return {w: float(c) for w, c in p.terms.items()}


def _expanded_square_sum(
    ctx: VarContext, gs: Sequence[dict[Word, float]]
) -> dict[Word, float]:
    out: dict[Word, float] = {}
    for g in gs:
        for w1, c1 in g.items():
            s1 = word_star(ctx, w1)
            for w2, c2 in g.items():
                w = s1.concat(w2)
                out[w] = out.get(w, 0.0) + c1 * c2
    return out


def expansion_residual(p: NcPoly, gs: Sequence[dict[Word, float]]) -> float:
    """max |coefficient of p - sum g*g|, expanded symbolically in floats.

    Independent of the feasibility search: only word arithmetic and the
    candidate coefficients enter.
    """
    expanded = _expanded_square_sum(p.context, gs)
    target = _float_terms(p)
    words = set(expanded) | set(target)
    return max(
        (abs(target.get(w, 0.0) - expanded.get(w, 0.0)) for w in words), default=0.0
    )


def sos_decompose(
    p: NcPoly,
    d: int | None = None,
    *,
    accept_tol: float = DEFAULT_ACCEPT_TOL,
    converge_tol: float = DEFAULT_CONVERGE_TOL,
    max_iters: int = DEFAULT_MAX_ITERS,
) -> SosResult:
    """Decide SoS membership of a symmetric polynomial of degree <= 2d.

    The exact obstruction is tried first; if it fires the answer is
    NotSos with no numerics involved.  Otherwise the PSD-feasibility
    search runs, and a convergent PSD point is factored into polynomials
    g_i whose expanded square sum is re-verified against p before a
    Certificate is returned.
    """
    if not p.is_symmetric():
        raise ValueError("sos_decompose requires a symmetric polynomial")
    if d is None:
        d = default_basis_degree(p)
    deg = p.degree()
    if deg is not None and deg > 2 * d:
        raise ValueError(f"polynomial degree {deg} exceeds 2*d = {2 * d}")
    if deg is not None:
        obstruction = top_obstruction(p)
        if obstruction is not None:
            return NotSos(obstruction)
    search = psd_gram_search(p, d, converge_tol=converge_tol, max_iters=max_iters)
    if search.converged and search.min_eigenvalue >= -accept_tol:
        basis = border_basis(p.context, d)
        factor = factor_psd(SymMat.from_array(search.matrix), accept_tol)
        gs_float: list[dict[Word, float]] = []
        for col in range(factor.shape[1]):
            g = {
                basis.words[row]: float(factor[row, col])
                for row in range(factor.shape[0])
                if factor[row, col] != 0.0
            }
            gs_float.append(g)
        residual = expansion_residual(p, gs_float)
        if residual <= accept_tol:
            gs = tuple(
                NcPoly(p.context, {w: Fraction(c) for w, c in g.items()})
                for g in gs_float
            )
            gram = GramMatrix.from_array(basis, factor @ factor.T)
            return Certificate(gs, gram, residual, search.iterations)
    return Inconclusive(search.iterations, search.final_gap, search.min_eigenvalue)


# -- conjugated combinations -------------------------------------------


def conjugated_poly(p: NcPoly, gs: Sequence[NcPoly]) -> NcPoly:
    """Exact sum_i g_i* p g_i; symmetric whenever p is."""
    gs = tuple(gs)
    if not gs or all(g.is_zero() for g in gs):
        raise EmptyConjugatorsError("need at least one nonzero conjugator")
    total = NcPoly.zero(p.context)
    for g in gs:
        if g.context != p.context:
            raise ValueError("conjugators must share the polynomial's context")
        total = total + g.star() * p * g
    return total


def refute_conjugation(p: NcPoly, gs: Sequence[NcPoly]) -> Obstruction:
    """Obstruct F = sum g_i* p g_i, hence F - 1, hence F not in 1 + SoS.

    Both F and F - 1 are checked: F - 1 not being SoS is the literal
    failure of the conjugated-certificate condition, and F not being SoS
    gives the same conclusion through 1 + SoS being contained in SoS.
    Raises ObstructionMissingError when no obstruction fires, which for
    polynomials with a negative maximal v*v coefficient signals a bug.
    """
    f_conj = conjugated_poly(p, gs)
    obstruction = top_obstruction(f_conj)
    if obstruction is None:
        raise ObstructionMissingError(
            "conjugated combination has no top-degree obstruction"
        )
    shifted = f_conj - 1
    if shifted.is_zero() or top_obstruction(shifted) is None:
        raise ObstructionMissingError(
            "conjugated combination minus one has no top-degree obstruction"
        )
    return obstruction


def random_conjugators(
    ctx: VarContext,
    rng: random.Random,
    *,
    max_polys: int = 3,
    max_degree: int = 3,
    max_terms: int = 3,
) -> tuple[NcPoly, ...]:
    """A seeded tuple of nonzero random polynomials with rational coefficients."""
    letters = ctx.letters()
    out: list[NcPoly] = []
    for _ in range(rng.randint(1, max_polys)):
        terms: dict[Word, Fraction] = {}
        while not terms:
            for _ in range(rng.randint(1, max_terms)):
                length = rng.randint(0, max_degree)
                w = Word(tuple(rng.choice(letters) for _ in range(length)))
                num = rng.choice([n for n in range(-5, 6) if n])
                coeff = Fraction(num, rng.randint(1, 4))
                terms[w] = terms.get(w, Fraction(0)) + coeff
            terms = {w: c for w, c in terms.items() if c}
        out.append(NcPoly(ctx, terms))
    return tuple(out)
