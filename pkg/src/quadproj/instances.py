"""Random non-cylindrical central quadrics for tests and benchmarks.

Eigenvectors come from the QR factor of a Gaussian matrix, eigenvalues are
uniform on [-1, -0.1] U [0.1, 1] with at least one positive, the center is
Gaussian, and ``c`` is chosen so that the normalized gamma equals ``gamma``.
"""
import numpy as np

from .quadric import new_quadric


def random_orthogonal(n, rng):
    Q, R = np.linalg.qr(rng.standard_normal((n, n)))
    return Q * np.sign(np.diag(R))


def random_spectrum(n, rng, low=0.1, high=1.0):
    lam = rng.uniform(low, high, n) * rng.choice([-1.0, 1.0], n)
    if np.all(lam < 0):
        lam[rng.integers(n)] *= -1.0
    return lam


def quadric_from_parts(V, lam, center, gamma=-1.0, sign=1.0):
    A = (V * lam) @ V.T
    A = 0.5 * (A + A.T)
    b = -2.0 * A @ center
    c = gamma + center @ A @ center
    return new_quadric(sign * A, sign * b, sign * c)


def random_quadric(n, rng, gamma=-1.0, random_sign=False):
    """A random nonempty non-cylindrical central quadric in dimension ``n``.

    With ``random_sign`` the whole triple (A, b, c) is negated half of the
    time, which exercises the sign normalization.
    """
    V = random_orthogonal(n, rng)
    lam = random_spectrum(n, rng)
    d = rng.standard_normal(n)
    sign = rng.choice([-1.0, 1.0]) if random_sign else 1.0
    return quadric_from_parts(V, lam, d, gamma, sign)
