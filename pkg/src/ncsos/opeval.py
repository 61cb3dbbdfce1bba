"""Evaluation of polynomials at matrix tuples, and the analytic checks.

A matrix tuple assigns one real square matrix per declared variable;
starred letters evaluate to the transpose, the empty word to the
identity.  On top of evaluation sit the deterministic not-NSD witnesses
for the bundled counterexamples, the C*-norm identity check, and the
truncated weighted shift Ae_k = k e_{k+1} whose interior quadratic form
is computed in exact rational arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np

from .counterexamples import ADJOINT_PAIR, TWO_SELFADJOINT
from .freealg import ContextMismatchError, Letter, NcPoly, VarContext
from .numlin import SymMat, opnorm2, sym_eigen


class IdentityViolatedError(RuntimeError):
    """The C*-norm identity failed beyond tolerance (a linear-algebra bug)."""


class BoundaryArtifactError(ValueError):
    """Vector touches the last shift coordinate, where truncation distorts the form."""


@dataclass(frozen=True, eq=False)
class MatTuple:
    """One n x n real matrix per variable, with the declared *-structure."""

    context: VarContext
    mats: tuple[np.ndarray, ...]

    @classmethod
    def from_matrices(cls, ctx: VarContext, mats: Sequence) -> "MatTuple":
        if len(mats) != ctx.var_count:
            raise ValueError(f"expected {ctx.var_count} matrices, got {len(mats)}")
        arrays = []
        n = None
        for name, selfadjoint, m in zip(ctx.names, ctx.selfadjoint, mats):
            a = np.asarray(m, dtype=float)
            if a.ndim != 2 or a.shape[0] != a.shape[1]:
                raise ValueError(f"matrix for {name!r} is not square")
            if n is None:
                n = a.shape[0]
            elif a.shape[0] != n:
                raise ValueError("matrices have mismatched dimensions")
            if selfadjoint and not np.array_equal(a, a.T):
                raise ValueError(f"matrix for self-adjoint {name!r} is not symmetric")
            arrays.append(a)
        return cls(ctx, tuple(arrays))

    @property
    def n(self) -> int:
        return self.mats[0].shape[0]

    def letter_matrix(self, letter: Letter) -> np.ndarray:
        m = self.mats[letter.var_index]
        return m.T if letter.starred else m


def evaluate(p: NcPoly, t: MatTuple) -> np.ndarray:
    """Sum of coefficient-weighted letter products; the empty word is the identity."""
    if p.context != t.context:
        raise ContextMismatchError("polynomial and tuple have different contexts")
    n = t.n
    eye = np.eye(n)
    out = np.zeros((n, n))
    for w, c in p.terms.items():
        if len(w):
            prod = reduce(np.matmul, (t.letter_matrix(l) for l in w))
        else:
            prod = eye
        out = out + float(c) * prod
    return out


@dataclass(frozen=True, eq=False)
class NsdCheck:
    nsd: bool
    value: float | None = None
    witness: np.ndarray | None = None


def nsd_check(m: np.ndarray, tol: float = 0.0) -> NsdCheck:
    """NSD iff lambda_max <= tol; otherwise the top eigenvector is the witness."""
    sym = SymMat.from_array(m)
    if not np.array_equal(sym.a, np.asarray(m, dtype=float)):
        raise ValueError("nsd_check requires a symmetric matrix")
    vals, q = sym_eigen(sym)
    top = float(vals[0])
    if top > tol:
        v = q[:, 0]
        return NsdCheck(False, float(v @ np.asarray(m, dtype=float) @ v), v)
    return NsdCheck(True)


@dataclass(frozen=True, eq=False)
class NsdWitness:
    """A unit vector with positive quadratic form, refuting negative semidefiniteness."""

    tuple: MatTuple
    vector: np.ndarray
    value: float


def _require_symmetric_array(m, what: str) -> np.ndarray:
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or not np.array_equal(a, a.T):
        raise ValueError(f"{what} must be a symmetric square matrix")
    return a


def crossing_witness(a, b) -> NsdWitness:
    """Deterministic witness that the crossing polynomial at (A, B) is not NSD.

    v is the top eigenvector of ABBA, so the quadratic form equals
    ||AB||^2 - <BAAB v, v> + 1 >= 1 up to roundoff, because BAAB shares
    the spectral norm ||AB||^2.
    """
    a = _require_symmetric_array(a, "A")
    b = _require_symmetric_array(b, "B")
    if a.shape != b.shape:
        raise ValueError("matrices must share dimensions")
    ab = a @ b
    abba = SymMat.from_array(ab @ ab.T)
    _, q = sym_eigen(abba)
    v = q[:, 0]
    value_matrix = abba.a - ab.T @ ab + np.eye(a.shape[0])
    value = float(v @ value_matrix @ v)
    t = MatTuple.from_matrices(TWO_SELFADJOINT, (a, b))
    return NsdWitness(t, v, value)


def adjoint_commutator_witness(a) -> NsdWitness:
    """Same construction for X*X' - X'*X + 1 at an arbitrary square matrix A."""
    a = np.asarray(a, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("expected a square matrix")
    aat = SymMat.from_array(a @ a.T)
    _, q = sym_eigen(aat)
    v = q[:, 0]
    value_matrix = aat.a - a.T @ a + np.eye(a.shape[0])
    value = float(v @ value_matrix @ v)
    t = MatTuple.from_matrices(ADJOINT_PAIR, (a,))
    return NsdWitness(t, v, value)


@dataclass(frozen=True)
class CstarReport:
    norm_abba: float
    norm_baab: float
    norm_ab_squared: float
    max_relative_deviation: float


def cstar_identity_check(a, b, tol: float = 1e-8) -> CstarReport:
    """Check ||ABBA|| = ||AB||^2 = ||BAAB|| for symmetric A, B.

    The identity is a theorem, so a deviation beyond tol raises
    IdentityViolatedError rather than returning a verdict.
    """
    a = _require_symmetric_array(a, "A")
    b = _require_symmetric_array(b, "B")
    if a.shape != b.shape:
        raise ValueError("matrices must share dimensions")
    ab = a @ b
    target = opnorm2(ab) ** 2
    norm_abba = opnorm2(ab @ ab.T)
    norm_baab = opnorm2(ab.T @ ab)
    scale = max(1.0, target)
    dev = max(abs(norm_abba - target), abs(norm_baab - target)) / scale
    if dev > tol:
        raise IdentityViolatedError(
            f"C*-identity violated: |deviation| = {dev:.3e} > {tol:.1e}"
        )
    return CstarReport(norm_abba, norm_baab, target, dev)


@dataclass(frozen=True, eq=False)
class ShiftTruncation:
    """N x N truncation of the weighted shift Ae_k = k e_{k+1} (integer entries)."""

    size: int
    matrix: np.ndarray

    @property
    def n(self) -> int:
        return self.size


def shift_truncation(size: int) -> ShiftTruncation:
    if size < 2:
        raise ValueError("shift truncation needs size >= 2")
    m = np.zeros((size, size), dtype=np.int64)
    for k in range(1, size):
        m[k, k - 1] = k
    return ShiftTruncation(size, m)


def shift_quadratic_form(t: ShiftTruncation, v: Sequence[Fraction]) -> Fraction:
    """Exact <(AA* - A*A + I)v, v> for interior v; equals -2 sum_n n |v_{n+1}|^2.

    The vector must vanish on the last coordinate: the truncated matrix
    misses the column that the infinite shift would feed back into it,
    so the final diagonal entry of AA* - A*A + I is the positive
    truncation artifact (N-1)^2 + 1 rather than the operator's value.
    """
    vec = [Fraction(x) for x in v]
    if len(vec) != t.size:
        raise ValueError(f"vector length {len(vec)} != truncation size {t.size}")
    if vec[-1] != 0:
        raise BoundaryArtifactError(
            "vector touches the last coordinate of the truncation"
        )
    rows = t.matrix.tolist()
    av = [sum(rows[i][j] * vec[j] for j in range(t.size)) for i in range(t.size)]
    atv = [sum(rows[j][i] * vec[j] for j in range(t.size)) for i in range(t.size)]
    norm_atv = sum(x * x for x in atv)
    norm_av = sum(x * x for x in av)
    norm_v = sum(x * x for x in vec)
    return norm_atv - norm_av + norm_v


def shift_closed_form(v: Sequence[Fraction]) -> Fraction:
    """-2 sum_{n>=1} n |v_{n+1}|^2, the exact value of the interior form."""
    vec = [Fraction(x) for x in v]
    return Fraction(-2) * sum(
        (n * vec[n] * vec[n] for n in range(1, len(vec))), Fraction(0)
    )


def random_symmetric(n: int, rng: np.random.Generator) -> np.ndarray:
    """(G + G^T)/2 with standard normal entries; exactly symmetric in floats."""
    g = rng.standard_normal((n, n))
    return (g + g.T) * 0.5
