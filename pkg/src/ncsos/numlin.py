"""Dense symmetric linear algebra at desk scale.

The eigensolver is a cyclic Jacobi sweep: the simplest symmetric
eigenroutine whose invariants (reconstruction residual, orthogonality)
are directly testable.  numpy supplies array storage and BLAS-level
products only; the decomposition itself is implemented here.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

DEFAULT_EIGEN_TOL = 1e-12
MAX_SWEEPS = 30


class NonFiniteMatrixError(ValueError):
    """Input contains NaN or infinity."""


class NonConvergenceError(RuntimeError):
    """Jacobi sweeps did not reach the off-diagonal threshold."""


class NotPsdError(ValueError):
    """Matrix has an eigenvalue below the allowed tolerance."""


@dataclass(frozen=True, eq=False)
class SymMat:
    """A dense symmetric float matrix; construction enforces exact symmetry."""

    a: np.ndarray

    @classmethod
    def from_array(cls, arr) -> "SymMat":
        arr = np.asarray(arr, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("expected a square matrix")
        # commutative float addition makes the two triangles exactly equal
        return cls((arr + arr.T) * 0.5)

    @property
    def n(self) -> int:
        return self.a.shape[0]


def _as_sym(s: "SymMat | np.ndarray") -> SymMat:
    return s if isinstance(s, SymMat) else SymMat.from_array(s)


def sym_eigen(s: "SymMat | np.ndarray", tol: float = DEFAULT_EIGEN_TOL):
    """Eigendecomposition by cyclic Jacobi rotations.

    Sweeps run until the off-diagonal Frobenius mass is <= tol * ||S||_F
    (at most MAX_SWEEPS, else NonConvergenceError).  Returns eigenvalues
    sorted descending and the matching orthogonal column matrix Q with
    S = Q diag(vals) Q^T.
    """
    s = _as_sym(s)
    a = s.a.copy()
    n = s.n
    if n < 1:
        raise ValueError("matrix must have dimension >= 1")
    if not np.isfinite(a).all():
        raise NonFiniteMatrixError("matrix entries must be finite")
    q = np.eye(n)
    fnorm = float(np.linalg.norm(a))
    if fnorm == 0.0 or n == 1:
        vals = np.diag(a).copy()
        order = np.argsort(-vals, kind="stable")
        return vals[order], q[:, order]
    thresh = tol * fnorm

    def off_norm() -> float:
        off = a.copy()
        np.fill_diagonal(off, 0.0)
        return float(np.linalg.norm(off))

    converged = off_norm() <= thresh
    for _ in range(MAX_SWEEPS):
        if converged:
            break
        for p in range(n - 1):
            for r in range(p + 1, n):
                apq = a[p, r]
                if apq == 0.0:
                    continue
                diff = a[r, r] - a[p, p]
                if abs(apq) < 1e-150 * abs(diff):
                    # rotation angle below float resolution; drop the entry
                    a[p, r] = 0.0
                    a[r, p] = 0.0
                    continue
                tau = diff / (2.0 * apq)
                if abs(tau) > 1e150:
                    t = 1.0 / (2.0 * tau)
                else:
                    t = (1.0 if tau >= 0 else -1.0) / (
                        abs(tau) + np.sqrt(1.0 + tau * tau)
                    )
                c = 1.0 / np.sqrt(1.0 + t * t)
                sn = t * c
                row_p = a[p, :].copy()
                row_r = a[r, :].copy()
                a[p, :] = c * row_p - sn * row_r
                a[r, :] = sn * row_p + c * row_r
                col_p = a[:, p].copy()
                col_r = a[:, r].copy()
                a[:, p] = c * col_p - sn * col_r
                a[:, r] = sn * col_p + c * col_r
                a[p, r] = 0.0
                a[r, p] = 0.0
                qp = q[:, p].copy()
                qr = q[:, r].copy()
                q[:, p] = c * qp - sn * qr
                q[:, r] = sn * qp + c * qr
        converged = off_norm() <= thresh
    if not converged:
        raise NonConvergenceError(
            f"off-diagonal norm {off_norm():.3e} above threshold after {MAX_SWEEPS} sweeps"
        )
    vals = np.diag(a).copy()
    order = np.argsort(-vals, kind="stable")
    return vals[order], q[:, order]


def psd_project(s: "SymMat | np.ndarray", tol: float = DEFAULT_EIGEN_TOL) -> SymMat:
    """Frobenius-nearest positive semidefinite matrix (negative eigenvalues clipped)."""
    s = _as_sym(s)
    vals, q = sym_eigen(s, tol)
    clipped = np.maximum(vals, 0.0)
    return SymMat.from_array((q * clipped) @ q.T)


def opnorm2(m: np.ndarray, tol: float = DEFAULT_EIGEN_TOL) -> float:
    """Spectral norm sqrt(lambda_max(M^T M)) of a square matrix."""
    m = np.asarray(m, dtype=float)
    vals, _ = sym_eigen(SymMat.from_array(m.T @ m), tol)
    return float(np.sqrt(max(float(vals[0]), 0.0)))


def factor_psd(s: "SymMat | np.ndarray", tol: float) -> np.ndarray:
    """An n x r factor L with S ~ L L^T, keeping eigenvalues above tol.

    Requires lambda_min(S) >= -tol; smaller eigenvalues raise NotPsdError.
    """
    s = _as_sym(s)
    vals, q = sym_eigen(s)
    if float(vals[-1]) < -tol:
        raise NotPsdError(f"eigenvalue {vals[-1]:.3e} below -{tol:.1e}")
    keep = vals > tol
    return q[:, keep] * np.sqrt(vals[keep])
