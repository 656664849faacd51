"""Construction of n x n filter matrices from filter specs.

The exact route diagonalizes the Laplacian and applies the frequency
response eigenvalue by eigenvalue:

    F = sum_i g(lambda_i) u_i u_i^T

It is the oracle every approximate construction is tested against. The
approximants stay sparse: truncated Taylor series for the matrix
exponential and cosine, repeated sparse multiplication for polynomial
filters, a Chebyshev three-term recurrence on the rescaled operator, and a
dense linear solve for the resolvent-style regularized Laplacian filter.
"""

import numpy as np

from .errors import ConvergenceError, PoleError
from .responses import frequency_response, regularization_fn
from .sparse import SparseMatrix
from .spectral import eigendecompose, max_eigenvalue


class FilterMatrix:
    """A realized graph filter: the matrix plus how it was built."""

    __slots__ = ("matrix", "spec", "construction", "order")

    def __init__(self, matrix, spec=None, construction="exact", order=None):
        self.matrix = matrix
        self.spec = spec
        self.construction = construction
        self.order = order

    @property
    def n(self):
        return self.matrix.shape[0]

    @property
    def is_sparse(self):
        return isinstance(self.matrix, SparseMatrix)

    def dense(self):
        return self.matrix.to_dense() if self.is_sparse else self.matrix

    def dot(self, X):
        X = np.asarray(X, dtype=np.float64)
        if X.shape[0] != self.matrix.shape[1]:
            raise ValueError(
                f"operand has {X.shape[0]} rows, filter expects {self.matrix.shape[1]}")
        if self.is_sparse:
            return self.matrix.matvec(X) if X.ndim == 1 else self.matrix.matmat(X)
        return self.matrix @ X

    def __repr__(self):
        kind = "sparse" if self.is_sparse else "dense"
        return f"FilterMatrix({kind} {self.matrix.shape}, {self.construction})"


def exact_filter(spec, eig):
    """Spectral-domain construction; raises PoleError on a non-finite gain."""
    g = frequency_response(spec, eig.eigenvalues)
    bad = ~np.isfinite(g)
    if np.any(bad):
        lam = float(eig.eigenvalues[np.flatnonzero(bad)[0]])
        raise PoleError(
            f"{spec.family} response is non-finite at eigenvalue {lam:.12g}", lam=lam)
    F = (eig.basis * g) @ eig.basis.T
    return FilterMatrix(F, spec, "exact")


def regularized_laplacian_filter(ltilde, s):
    """(I + s*Ltilde)^{-1} via a dense solve, residual-checked per column."""
    if s <= 0:
        raise ValueError("regularized Laplacian filter requires s > 0")
    n = ltilde.n_rows
    A = SparseMatrix.identity(n).add(ltilde, 1.0, s).to_dense()
    F = np.linalg.solve(A, np.eye(n))
    resid = np.linalg.norm(A @ F - np.eye(n), axis=0)
    if np.max(resid) > 1e-10:
        raise ConvergenceError(
            f"linear solve residual {np.max(resid):.3e} above 1e-10")
    return FilterMatrix(F, None, "linear_solve")


def diffusion_filter_taylor(ltilde, s, K, theta=1.0):
    """Truncated series for theta * exp(-s*Ltilde), K+1 terms, kept sparse."""
    if s <= 0:
        raise ValueError("diffusion filter requires s > 0")
    if K < 0:
        raise ValueError("order K must be non-negative")
    eye = SparseMatrix.identity(ltilde.n_rows)
    acc = eye.scale(theta)
    power = eye
    coef = theta
    for k in range(1, K + 1):
        power = power.spmm(ltilde)
        coef *= -s / k
        acc = acc.add(power, 1.0, coef)
    return FilterMatrix(acc, None, "taylor", order=K)


def cosine_filter(ltilde, K, theta=1.0):
    """theta * sum_{k<=K} (-1)^k/(2k)! (Ltilde*pi/4)^{2k}; even powers only."""
    if K < 0:
        raise ValueError("order K must be non-negative")
    eye = SparseMatrix.identity(ltilde.n_rows)
    acc = eye.scale(theta)
    sq = ltilde.spmm(ltilde).scale((np.pi / 4.0) ** 2)
    power = eye
    coef = theta
    for k in range(1, K + 1):
        power = power.spmm(sq)
        coef *= -1.0 / ((2 * k - 1) * (2 * k))
        acc = acc.add(power, 1.0, coef)
    return FilterMatrix(acc, None, "taylor", order=K)


def _cheb_basis_matrices(L_s, count):
    """T_0(L_s) .. T_{count-1}(L_s) by the three-term recurrence."""
    mats = [SparseMatrix.identity(L_s.n_rows)]
    if count > 1:
        mats.append(L_s)
    for _ in range(2, count):
        mats.append(L_s.spmm(mats[-1]).add(mats[-2], 2.0, -1.0))
    return mats


def _cheb_combine(mats, coeffs):
    acc = mats[0].scale(coeffs[0])
    for c, m in zip(coeffs[1:], mats[1:]):
        acc = acc.add(m, 1.0, c)
    return acc


def cheb_rescale(L, lambda_max):
    """L_s = (2/lambda_max) L - I, mapping the spectrum into [-1, 1]."""
    if lambda_max <= 0:
        raise ValueError("lambda_max must be positive")
    return L.scale(2.0 / lambda_max).add(SparseMatrix.identity(L.n_rows), 1.0, -1.0)


def chebynet_filter(L, theta, lambda_max):
    """sum_k theta_k T_k(L_s) with L_s from cheb_rescale."""
    theta = [float(t) for t in theta]
    if not theta:
        raise ValueError("theta must contain at least one coefficient")
    L_s = cheb_rescale(L, lambda_max)
    mats = _cheb_basis_matrices(L_s, len(theta))
    return FilterMatrix(_cheb_combine(mats, theta), None, "chebyshev",
                        order=len(theta) - 1)


def p_step_rw_filter(ltilde, a, p, construction="direct"):
    """(a*I - Ltilde)^p, either by repeated multiplication or via the
    Chebyshev expansion of the degree-p polynomial on the rescaled spectrum."""
    if p < 1:
        raise ValueError("p must be a positive integer")
    if construction == "direct":
        base = SparseMatrix.identity(ltilde.n_rows).add(ltilde, a, -1.0)
        acc = base
        for _ in range(p - 1):
            acc = acc.spmm(base)
        return FilterMatrix(acc, None, "direct", order=p)
    if construction == "chebyshev":
        lmax = max_eigenvalue(ltilde)
        poly = np.polynomial.Polynomial([a, -1.0]) ** p
        coeffs = poly.convert(domain=[0.0, lmax],
                              kind=np.polynomial.Chebyshev).coef
        L_s = cheb_rescale(ltilde, lmax)
        mats = _cheb_basis_matrices(L_s, len(coeffs))
        return FilterMatrix(_cheb_combine(mats, list(coeffs)), None,
                            "chebyshev", order=p)
    raise ValueError(f"unknown construction {construction!r}")


def graphheat_filter(ltilde, s, K, theta0=1.0, theta1=1.0):
    """theta0*I + theta1*TaylorK(exp(-s*Ltilde))."""
    diff = diffusion_filter_taylor(ltilde, s, K, 1.0)
    if theta0 == 0.0:
        acc = diff.matrix.scale(theta1) if theta1 != 1.0 else diff.matrix
    else:
        acc = SparseMatrix.identity(ltilde.n_rows).add(diff.matrix, theta0, theta1)
    return FilterMatrix(acc, None, "taylor", order=K)


def igcn_filter(ltilde, K, theta=1.0):
    """theta * (I - Ltilde)^K by repeated sparse multiplication."""
    if K < 1:
        raise ValueError("K must be a positive integer")
    base = SparseMatrix.identity(ltilde.n_rows).add(ltilde, 1.0, -1.0)
    acc = base
    for _ in range(K - 1):
        acc = acc.spmm(base)
    if theta != 1.0:
        acc = acc.scale(theta)
    return FilterMatrix(acc, None, "direct", order=K)


def apply_filter(F, X):
    """Matrix product F @ X."""
    return F.dot(X)


class KernelReport:
    """Positive-semidefiniteness and pseudo-inverse diagnostics of a filter."""

    __slots__ = ("symmetry_defect", "min_eigenvalue", "pinv_residual", "psd")

    def __init__(self, symmetry_defect, min_eigenvalue, pinv_residual):
        self.symmetry_defect = symmetry_defect
        self.min_eigenvalue = min_eigenvalue
        self.pinv_residual = pinv_residual
        self.psd = min_eigenvalue >= -1e-8

    def rows(self):
        return [
            ("symmetry_defect", f"{self.symmetry_defect:.12g}"),
            ("min_eigenvalue", f"{self.min_eigenvalue:.12g}"),
            ("pinv_residual", f"{self.pinv_residual:.12g}"),
            ("psd", "true" if self.psd else "false"),
        ]


def kernel_check(F, spec, ltilde):
    """Validate that F behaves as the (pseudo-)inverse of the penalty matrix.

    Reports the symmetry defect of F, its minimum eigenvalue (PSD verdict at
    -1e-8), and ||F r(Ltilde) - P||_F where r(Ltilde) is assembled over the
    eigenspaces with finite penalty and P projects onto them (P = I when the
    penalty is finite everywhere).
    """
    eig = eigendecompose(ltilde)
    r = regularization_fn(spec, eig.eigenvalues)
    finite = np.isfinite(r)
    r_mat = (eig.basis * np.where(finite, r, 0.0)) @ eig.basis.T
    proj = (eig.basis * finite.astype(np.float64)) @ eig.basis.T
    Fd = F.dense()
    sym = float(np.linalg.norm(Fd - Fd.T))
    min_eig = float(np.linalg.eigvalsh((Fd + Fd.T) / 2.0)[0])
    resid = float(np.linalg.norm(Fd @ r_mat - proj))
    return KernelReport(sym, min_eig, resid)
