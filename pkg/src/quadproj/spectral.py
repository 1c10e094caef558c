"""Symmetric eigendecomposition and eigenvalue grouping.

The eigensolve is the expensive step of a projection; everything downstream
is O(n) once the spectrum is known.
"""
from dataclasses import dataclass

import numpy as np

from .errors import NoConvergence, NotSymmetric

SYM_TOL = 1e-12
GROUP_TOL = 1e-9
JACOBI_SWEEPS = 30
JACOBI_TOL = 1e-14


@dataclass(frozen=True)
class EigenDecomposition:
    values: np.ndarray  # descending
    vectors: np.ndarray  # columns are eigenvectors


@dataclass(frozen=True)
class EigenGroups:
    groups: tuple  # tuple of index arrays, contiguous in sorted order
    representatives: np.ndarray

    @property
    def starts(self):
        return np.array([g[0] for g in self.groups], dtype=int)

    def __len__(self):
        return len(self.groups)

    def group_of(self, i):
        for g, idx in enumerate(self.groups):
            if idx[0] <= i <= idx[-1]:
                return g
        raise IndexError(i)


def check_symmetric(A, tol=SYM_TOL):
    A = np.asarray(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise ValueError(f"expected a nonempty square matrix, got shape {A.shape}")
    asym = np.linalg.norm(A - A.T)
    if asym > tol * max(1.0, np.linalg.norm(A)):
        raise NotSymmetric(f"matrix is not symmetric (||A - A^T||_F = {asym:.3g})")
    return 0.5 * (A + A.T)


def _fix_signs(V):
    # largest-magnitude entry of each column positive; argmax takes the first on ties
    idx = np.argmax(np.abs(V), axis=0)
    signs = np.sign(V[idx, np.arange(V.shape[1])])
    signs[signs == 0] = 1.0
    return V * signs


def _off_norm(a):
    return float(np.sqrt(2.0 * np.sum(np.triu(a, 1) ** 2)))


def jacobi_eigh(A, max_sweeps=JACOBI_SWEEPS, tol=JACOBI_TOL):
    """Cyclic Jacobi eigensolver. Returns unsorted (values, vectors)."""
    a = np.array(A, dtype=float)
    n = a.shape[0]
    v = np.eye(n)
    scale = np.linalg.norm(a)
    if scale == 0.0:
        return np.zeros(n), v
    for _ in range(max_sweeps):
        off = _off_norm(a)
        if off <= tol * scale:
            return np.diag(a).copy(), v
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                diff = a[q, q] - a[p, p]
                if abs(apq) <= 1e-20 * scale:
                    a[p, q] = a[q, p] = 0.0
                    continue
                theta = diff / (2.0 * apq)
                if theta == 0.0:
                    t = 1.0
                elif abs(theta) > 1e100:
                    t = 0.5 / theta
                else:
                    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * aq
                a[:, q] = s * ap + c * aq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - s * rq
                a[q, :] = s * rp + c * rq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * vq
                v[:, q] = s * vp + c * vq
    off = _off_norm(a)
    if off <= tol * scale:
        return np.diag(a).copy(), v
    raise NoConvergence(f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal {off:.3g})")


def eig_sym(A, method="lapack"):
    """Eigendecomposition of a symmetric matrix, eigenvalues in descending order.

    ``method`` is ``"lapack"`` (numpy's ``eigh``) or ``"jacobi"``. Either way the
    eigenvector columns are sign-normalized so that the entry of largest
    magnitude is positive, which makes the output reproducible.
    """
    A = check_symmetric(A)
    if method == "lapack":
        w, V = np.linalg.eigh(A)
    elif method == "jacobi":
        w, V = jacobi_eigh(A)
    else:
        raise ValueError(f"unknown method {method!r}")
    order = np.argsort(-w, kind="stable")
    return EigenDecomposition(values=w[order], vectors=_fix_signs(V[:, order]))


def group_eigenvalues(values, tol=GROUP_TOL):
    """Split descending eigenvalues into blocks of numerically equal values.

    A new block starts whenever the gap to the previous value exceeds
    ``tol * max(1, max|values|)``. The representative of a block is its first
    (largest) value.
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return EigenGroups(groups=(), representatives=np.array([]))
    thresh = tol * max(1.0, float(np.max(np.abs(values))))
    breaks = np.nonzero(np.abs(np.diff(values)) > thresh)[0] + 1
    groups = tuple(np.split(np.arange(values.size), breaks))
    starts = np.concatenate([[0], breaks])
    return EigenGroups(groups=groups, representatives=values[starts])
