"""Dense symmetric eigendecomposition, graph Fourier transform and spectrum
utilities.

The eigendecomposition is the exact route everything else is checked
against; it is dense O(n^3) and therefore gated by a size cap. Above the
cap callers are expected to use the polynomial approximants from
``specfilt.filters``.
"""

import numpy as np

from .errors import CapExceededError, ConvergenceError
from .sparse import SparseMatrix

DENSE_CAP_DEFAULT = 5000

_POWER_ITER_SEED = 20240803  # fixed start perturbation, part of the contract


class EigenSystem:
    """Orthonormal eigenbasis U (columns) and ascending eigenvalues."""

    __slots__ = ("basis", "eigenvalues")

    def __init__(self, basis, eigenvalues):
        self.basis = np.asarray(basis, dtype=np.float64)
        self.eigenvalues = np.asarray(eigenvalues, dtype=np.float64)
        if self.basis.ndim != 2 or self.basis.shape[0] != self.basis.shape[1]:
            raise ValueError("basis must be square")
        if self.eigenvalues.shape != (self.basis.shape[0],):
            raise ValueError("eigenvalue count must match basis size")
        if np.any(np.diff(self.eigenvalues) < 0):
            raise ValueError("eigenvalues must be ascending")

    @property
    def n(self):
        return self.basis.shape[0]


def _fix_signs(U, tol=1e-12):
    """Make the first non-negligible component of each eigenvector positive."""
    U = U.copy()
    for j in range(U.shape[1]):
        col = U[:, j]
        nz = np.flatnonzero(np.abs(col) > tol)
        if nz.size and col[nz[0]] < 0:
            U[:, j] = -col
    return U


def eigendecompose(m, cap=DENSE_CAP_DEFAULT, validate=True):
    """Full eigensystem of a symmetric sparse matrix.

    Raises for asymmetric input (tolerance 1e-10) and for matrices above the
    dense cap, where the exact path is unavailable and callers should use an
    approximant instead.
    """
    if isinstance(m, SparseMatrix):
        if m.n_rows != m.n_cols:
            raise ValueError("matrix must be square")
        if m.symmetry_defect() > 1e-10:
            raise ValueError("matrix is not symmetric within 1e-10")
        n = m.n_rows
        dense = m.to_dense()
    else:
        dense = np.asarray(m, dtype=np.float64)
        n = dense.shape[0]
        if np.max(np.abs(dense - dense.T), initial=0.0) > 1e-10:
            raise ValueError("matrix is not symmetric within 1e-10")
    if n > cap:
        raise CapExceededError(
            f"n={n} exceeds the dense cap {cap}: "
            "exact path unavailable, use approximant")
    w, U = np.linalg.eigh((dense + dense.T) / 2.0)
    U = _fix_signs(U)
    e = EigenSystem(U, w)
    if validate:
        gram_err = np.linalg.norm(U.T @ U - np.eye(n))
        if gram_err > 1e-8:
            raise ConvergenceError(f"eigenbasis not orthonormal: {gram_err:.3e}")
        rec = (U * w) @ U.T
        denom = max(np.linalg.norm(dense), 1e-300)
        rel = np.linalg.norm(rec - dense) / denom
        if rel > 1e-7:
            raise ConvergenceError(f"reconstruction error {rel:.3e} above 1e-7")
    return e


def gft(f, e):
    """Forward transform: coefficients of f in the eigenbasis."""
    f = np.asarray(f, dtype=np.float64)
    if f.shape[0] != e.n:
        raise ValueError(f"signal length {f.shape[0]} does not match n={e.n}")
    return e.basis.T @ f


def igft(fhat, e):
    """Inverse transform back to the vertex domain."""
    fhat = np.asarray(fhat, dtype=np.float64)
    if fhat.shape[0] != e.n:
        raise ValueError(f"coefficient length {fhat.shape[0]} does not match n={e.n}")
    return e.basis @ fhat


def smoothness(f, L):
    """Quadratic form f^T L f = sum_{i~j} w_ij (f_i - f_j)^2."""
    f = np.asarray(f, dtype=np.float64)
    if f.shape != (L.n_cols,):
        raise ValueError("signal length does not match the operator")
    return float(f @ L.matvec(f))


def max_eigenvalue(m, rel_tol=1e-10, max_iter=10000):
    """Largest eigenvalue of a symmetric PSD matrix by power iteration.

    Deterministic: starts from the all-ones vector plus a fixed-seed
    perturbation (the perturbation matters, e.g. the ones vector is exactly
    the lowest eigenvector of a normalized Laplacian).
    """
    n = m.n_rows
    rng = np.random.default_rng(_POWER_ITER_SEED)
    v = np.ones(n) + 1e-3 * rng.uniform(-1.0, 1.0, n)
    v /= np.linalg.norm(v)
    lam_prev = None
    for _ in range(max_iter):
        w = m.matvec(v)
        norm = np.linalg.norm(w)
        if norm < 1e-300:
            return 0.0
        lam = float(v @ w)
        v = w / norm
        if lam_prev is not None and abs(lam - lam_prev) <= rel_tol * max(abs(lam), 1e-30):
            return lam
        lam_prev = lam
    raise ConvergenceError(f"power iteration did not converge in {max_iter} iterations")
