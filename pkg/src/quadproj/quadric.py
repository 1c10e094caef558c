"""Quadrics, their classification, and the map to standard form.

A quadric is the zero set of ``Psi(x) = x^T A x + b^T x + c``. For a
non-cylindrical central quadric with center ``d = -A^{-1} b / 2`` and
``gamma = c - b^T A^{-1} b / 4`` one has

    Psi(d + s V y) = s**2 * y^T D y + gamma,      A = V D V^T,

so with ``s = sqrt(|gamma|)`` and ``gamma < 0`` the quadric becomes
``sum_i lambda_i y_i**2 = 1``. When ``gamma > 0`` the signs of (A, b, c) are
negated first; this leaves the zero set unchanged.
"""
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import (
    ConicalDegenerate,
    Cylindrical,
    EmptyQuadric,
    NotCentral,
    ZeroQuadratic,
)
from .spectral import SYM_TOL, check_symmetric, eig_sym

RANK_TOL = 1e-10
FEAS_TOL = 1e-8
GAMMA_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Quadric:
    A: np.ndarray
    b: np.ndarray
    c: float

    @property
    def dim(self):
        return self.b.shape[0]

    def evaluate(self, x):
        return evaluate(self, x)

    def is_feasible(self, x, tol=FEAS_TOL):
        return is_feasible(self, x, tol)

    def to_dict(self):
        return {"A": self.A.tolist(), "b": self.b.tolist(), "c": float(self.c)}


class Kind(str, Enum):
    CONICAL = "conical"
    CENTRAL = "central"
    PARABOLIC = "parabolic"


@dataclass(frozen=True)
class QuadricClass:
    kind: Kind
    cylindrical: bool
    rank_A: int
    positives: int
    negatives: int
    rank_Astar: int
    rank_Ab: int

    @property
    def supported(self):
        return self.kind is Kind.CENTRAL and not self.cylindrical

    def describe(self):
        cyl = "cylindrical" if self.cylindrical else "non-cylindrical"
        return f"{self.kind.value}, {cyl}, r={self.rank_A}, p={self.positives}"


@dataclass(frozen=True, eq=False)
class StandardForm:
    values: np.ndarray  # eigenvalues of the sign-normalized A, descending
    vectors: np.ndarray
    center: np.ndarray
    gamma: float  # of the sign-normalized quadric, always < 0
    scale: float
    flipped: bool
    quadric: Quadric

    @property
    def dim(self):
        return self.values.shape[0]

    def to_std(self, x):
        return to_std(self, x)

    def from_std(self, y):
        return from_std(self, y)


def new_quadric(A, b, c):
    A = np.atleast_2d(np.asarray(A, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError(f"A must be square, got shape {A.shape}")
    if b.ndim != 1 or b.shape[0] != A.shape[0]:
        raise ValueError(f"b must have length {A.shape[0]}, got shape {b.shape}")
    c = float(np.asarray(c, dtype=float).reshape(()))
    if not (np.all(np.isfinite(A)) and np.all(np.isfinite(b)) and np.isfinite(c)):
        raise ValueError("quadric parameters must be finite")
    A = check_symmetric(A, SYM_TOL)
    if not np.any(A):
        raise ZeroQuadratic("A = 0: the function is not quadratic")
    A.setflags(write=False)
    b.setflags(write=False)
    return Quadric(A=A, b=b, c=c)


def _rank(M, tol=RANK_TOL):
    sv = np.linalg.svd(M, compute_uv=False)
    if sv.size == 0 or sv[0] == 0.0:
        return 0
    return int(np.sum(sv > tol * sv[0]))


def extended_matrix(q):
    n = q.dim
    Astar = np.empty((n + 1, n + 1))
    Astar[0, 0] = q.c
    Astar[0, 1:] = q.b / 2
    Astar[1:, 0] = q.b / 2
    Astar[1:, 1:] = q.A
    return Astar


def classify(q):
    n = q.dim
    w = eig_sym(q.A).values
    thresh = RANK_TOL * np.max(np.abs(w))
    r = _rank(q.A)
    p = int(np.sum(w > thresh))
    neg = int(np.sum(w < -thresh))
    rank_ab = _rank(np.hstack([q.A, q.b[:, None] / 2]))
    rank_astar = _rank(extended_matrix(q))
    if rank_ab > r:
        kind = Kind.PARABOLIC
        cylindrical = r < n - 1
    elif rank_astar > rank_ab:
        kind = Kind.CENTRAL
        cylindrical = r < n
    else:
        kind = Kind.CONICAL
        cylindrical = r < n
    return QuadricClass(kind, cylindrical, r, p, neg, rank_astar, rank_ab)


def standardize(q, eig_method="lapack", eig=None):
    """Bring a non-cylindrical central quadric to ``sum lambda_i y_i**2 = 1``.

    ``eig`` may carry a precomputed :class:`EigenDecomposition` of ``q.A``.
    """
    ed = eig if eig is not None else eig_sym(q.A, method=eig_method)
    w = ed.values
    amax = np.max(np.abs(w))
    if np.min(np.abs(w)) <= RANK_TOL * amax:
        cls = classify(q)
        if cls.kind is Kind.CENTRAL:
            raise Cylindrical(f"cylindrical central quadric (rank A = {cls.rank_A} < {q.dim})")
        raise NotCentral(f"{cls.kind.value} quadric with singular A is not supported")
    # A^{-1} b from the eigendecomposition we already have
    vb = ed.vectors.T @ q.b
    center = -0.5 * (ed.vectors @ (vb / w))
    gamma = q.c + 0.5 * float(q.b @ center)
    gtol = GAMMA_TOL * max(1.0, abs(q.c), float(q.b @ q.b) / amax)
    if abs(gamma) <= gtol:
        raise ConicalDegenerate(f"gamma = {gamma:.3g} vanishes: the quadric is a cone")
    flipped = gamma > 0
    if flipped:
        gamma = -gamma
        # -A has the same eigenvectors; stable sort keeps tied columns in place
        order = np.argsort(w, kind="stable")
        w, V = -w[order], ed.vectors[:, order]
    else:
        V = ed.vectors
    if w[0] <= RANK_TOL * amax:
        raise EmptyQuadric("no positive eigenvalue after normalization: the quadric is empty")
    for arr in (w, V, center):
        arr.setflags(write=False)
    return StandardForm(
        values=w,
        vectors=V,
        center=center,
        gamma=float(gamma),
        scale=float(np.sqrt(-gamma)),
        flipped=bool(flipped),
        quadric=q,
    )


def to_std(sf, x):
    x = np.asarray(x, dtype=float)
    return ((x - sf.center) @ sf.vectors) / sf.scale


def from_std(sf, y):
    y = np.asarray(y, dtype=float)
    return sf.scale * (y @ sf.vectors.T) + sf.center


def _terms(q, x):
    x = np.asarray(x, dtype=float)
    quad = np.einsum("...i,ij,...j->...", x, q.A, x)
    lin = x @ q.b
    return quad, lin


def evaluate(q, x):
    quad, lin = _terms(q, x)
    return quad + lin + q.c


def is_feasible(q, x, tol=FEAS_TOL):
    """True when ``|Psi(x)|`` is within ``tol`` of ``max(1, |x'Ax|, |b'x|, |c|)``.

    Accepts a single point or an (m, n) array of points.
    """
    quad, lin = _terms(q, x)
    scale = np.maximum.reduce([np.ones_like(quad), np.abs(quad), np.abs(lin), np.full_like(quad, abs(q.c))])
    ok = np.abs(quad + lin + q.c) <= tol * scale
    return bool(ok) if np.ndim(ok) == 0 else ok
