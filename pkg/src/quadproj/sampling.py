"""Points on 2D and 3D quadrics, for external plotting."""
import numpy as np

from .errors import Unsupported
from .quadric import is_feasible, standardize

SAMPLE_FEAS_TOL = 1e-6


def _ellipse(l, count, t_max):
    t = 2.0 * np.pi * np.arange(count) / count
    y = np.stack([np.cos(t) / np.sqrt(l[0]), np.sin(t) / np.sqrt(l[1])], axis=1)
    return y, np.zeros(count, dtype=int)


def _hyperbola(l, count, t_max):
    m = max(count // 2, 2)
    t = np.linspace(-t_max, t_max, m)
    ys, br = [], []
    for k, s in enumerate((1.0, -1.0)):
        ys.append(np.stack([s * np.cosh(t) / np.sqrt(l[0]), np.sinh(t) / np.sqrt(-l[1])], axis=1))
        br.append(np.full(m, k))
    return np.vstack(ys), np.concatenate(br)


def _ellipsoid(l, count, t_max):
    th, ph = np.meshgrid(
        2.0 * np.pi * np.arange(count) / count, np.linspace(0.0, np.pi, count), indexing="ij"
    )
    th, ph = th.ravel(), ph.ravel()
    r = np.sqrt(l)
    y = np.stack([np.sin(ph) * np.cos(th) / r[0], np.sin(ph) * np.sin(th) / r[1], np.cos(ph) / r[2]], axis=1)
    return y, np.zeros(len(th), dtype=int)


def _one_sheet(l, count, t_max):
    th, t = np.meshgrid(
        2.0 * np.pi * np.arange(count) / count, np.linspace(-t_max, t_max, count), indexing="ij"
    )
    th, t = th.ravel(), t.ravel()
    y = np.stack(
        [
            np.cosh(t) * np.cos(th) / np.sqrt(l[0]),
            np.cosh(t) * np.sin(th) / np.sqrt(l[1]),
            np.sinh(t) / np.sqrt(-l[2]),
        ],
        axis=1,
    )
    return y, np.zeros(len(th), dtype=int)


def _two_sheet(l, count, t_max):
    th, t = np.meshgrid(
        2.0 * np.pi * np.arange(count) / count, np.linspace(0.0, t_max, count), indexing="ij"
    )
    th, t = th.ravel(), t.ravel()
    ys, br = [], []
    for k, s in enumerate((1.0, -1.0)):
        ys.append(
            np.stack(
                [
                    s * np.cosh(t) / np.sqrt(l[0]),
                    np.sinh(t) * np.cos(th) / np.sqrt(-l[1]),
                    np.sinh(t) * np.sin(th) / np.sqrt(-l[2]),
                ],
                axis=1,
            )
        )
        br.append(np.full(len(t), k))
    return np.vstack(ys), np.concatenate(br)


def sample_quadric(q, count, t_max=2.0):
    """Sample a 2D or 3D non-cylindrical central quadric.

    In 2D ``count`` is the number of points per curve (split over the two
    branches of a hyperbola); in 3D it is the grid resolution per surface
    parameter. Hyperbolic parameters run over ``[-t_max, t_max]``.

    Returns ``(points, branch)`` where ``branch`` labels connected pieces.
    """
    if q.dim not in (2, 3):
        raise Unsupported(f"sampling supports n = 2 or 3, got n = {q.dim}")
    if count < 1:
        raise ValueError("count must be positive")
    sf = standardize(q)
    l = sf.values
    npos = int(np.sum(l > 0))
    table = {(2, 2): _ellipse, (2, 1): _hyperbola, (3, 3): _ellipsoid, (3, 2): _one_sheet, (3, 1): _two_sheet}
    y, branch = table[(q.dim, npos)](l, count, t_max)
    x = sf.from_std(y)
    ok = is_feasible(q, x, SAMPLE_FEAS_TOL)
    if not np.all(ok):
        raise AssertionError(f"{int(np.sum(~ok))} sampled points are off the quadric")
    return x, branch
