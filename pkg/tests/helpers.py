import numpy as np

from quadproj.instances import quadric_from_parts, random_orthogonal, random_quadric, random_spectrum
from quadproj.quadric import new_quadric

# name -> (A, b, c, kind, cylindrical)
CORPUS = {
    "circle": (np.eye(2), [0, 0], -1, "central", False),
    "ellipse": (np.diag([0.25, 1.0]), [0, 0], -1, "central", False),
    "hyperbola": (np.diag([1.0, -1.0]), [0, 0], -1, "central", False),
    "parabola": (np.diag([1.0, 0.0]), [0, -1], 0, "parabolic", False),
    "crossing_lines": (np.diag([1.0, -1.0]), [0, 0], 0, "conical", False),
    "parallel_lines": (np.diag([1.0, 0.0]), [0, 0], -1, "central", True),
    "ellipsoid": (np.diag([1.0, 0.5, 0.25]), [0, 0, 0], -1, "central", False),
    "hyperboloid_one_sheet": (np.diag([1.0, 1.0, -1.0]), [0, 0, 0], -1, "central", False),
    "hyperboloid_two_sheets": (np.diag([1.0, -1.0, -1.0]), [0, 0, 0], -1, "central", False),
    "elliptic_paraboloid": (np.diag([1.0, 2.0, 0.0]), [0, 0, -1], 0, "parabolic", False),
    "cylinder": (np.diag([1.0, 1.0, 0.0]), [0, 0, 0], -1, "central", True),
    "cone": (np.diag([1.0, 1.0, -1.0]), [0, 0, 0], 0, "conical", False),
    "parabolic_cylinder": (np.diag([1.0, 0.0, 0.0]), [0, -1, 0], 0, "parabolic", True),
}


def corpus_quadric(name):
    A, b, c, _, _ = CORPUS[name]
    return new_quadric(A, b, c)


def degenerate_instance(n, rng, zero_prob=0.5):
    """Random quadric plus a point whose standard coordinates have exact zeros."""
    V = random_orthogonal(n, rng)
    lam = random_spectrum(n, rng)
    d = rng.standard_normal(n)
    q = quadric_from_parts(V, lam, d, sign=rng.choice([-1.0, 1.0]))
    from quadproj.quadric import standardize

    sf = standardize(q)
    y0 = 2.0 * rng.standard_normal(n)
    mask = rng.random(n) < zero_prob
    if not mask.any():
        mask[rng.integers(n)] = True
    y0[mask] = 0.0
    return q, sf.from_std(y0)


def transformed(q, Q, t):
    """The image of ``q`` under ``x -> Q x + t``."""
    A = Q @ q.A @ Q.T
    b = Q @ q.b - 2.0 * A @ t
    c = q.c + t @ A @ t - (Q @ q.b) @ t
    return new_quadric(A, b, c)


__all__ = ["CORPUS", "corpus_quadric", "degenerate_instance", "random_quadric", "transformed"]
