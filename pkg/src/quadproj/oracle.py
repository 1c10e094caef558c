"""Brute-force reference solvers, for tests and ``--oracle`` cross-checks.

Nothing here is used by :func:`quadproj.project`. The secular oracle finds
every real root of the cleared-denominator polynomial by a sign scan, so it
does not rely on the interval argument that the fast path uses; the 2D
oracle samples the curve itself.
"""
import math

import numpy as np

from .errors import CostGuard, Unsupported
from .quadric import standardize

GRID_POINTS = 100_000
MAX_DIM = 12


def _group_data(sp):
    lam = np.array([sp.values[g[0]] for g in sp.groups.groups])
    w = np.array([float(np.sum(sp.y0[g] ** 2)) for g in sp.groups.groups])
    return lam, w


def secular_polynomial(lam, w, mu, base=None):
    """P(mu) = sum_g lam_g w_g prod_{h != g} (1 + mu lam_h)^2 - prod_h (1 + mu lam_h)^2.

    Only groups with ``w_g > 0`` should be passed. Evaluated in product form.
    With ``base`` given, the factors are ``(base_h + mu lam_h)^2`` instead, which
    is how the polynomial is written relative to a pole.
    """
    s = np.asarray(mu, dtype=float)
    if base is None:
        base = np.ones_like(lam)
    fac = (base + np.multiply.outer(s, lam)) ** 2
    total = np.prod(fac, axis=-1)
    acc = np.zeros_like(total)
    for g in range(lam.size):
        acc = acc + lam[g] * w[g] * np.prod(np.delete(fac, g, axis=-1), axis=-1)
    return acc - total


def _bisect(fun, a, b, fa, iters=2000):
    for _ in range(iters):
        m = 0.5 * (a + b)
        if m <= a or m >= b:
            break
        fm = fun(m)
        if fm == 0.0:
            return m
        if (fm > 0) == (fa > 0):
            a, fa = m, fm
        else:
            b = m
    return 0.5 * (a + b)


def _scan(fun, grid):
    vals = fun(grid)
    roots = list(grid[vals == 0.0])
    for k in np.nonzero(vals[:-1] * vals[1:] < 0)[0]:
        roots.append(_bisect(lambda m: float(fun(m)), grid[k], grid[k + 1], vals[k]))
    return roots


def polynomial_roots(lam, w, y0_norm, grid_points=GRID_POINTS):
    """All real roots of the secular polynomial, as ``(group, offset)`` pairs.

    The line is scanned on a uniform grid, except inside a window around each
    pole, which is scanned in coordinates relative to the pole on a geometric
    grid. There the factor of the pole's own group is exactly ``lam * s``, so
    roots hugging a pole are resolved to full relative precision. ``group``
    is -1 for roots found on the uniform grid, where the offset is mu itself.
    """
    if lam.size == 0:
        return []
    poles = -1.0 / lam
    order = np.argsort(poles)
    ps = poles[order]
    gaps = np.diff(ps)
    radius = np.full(lam.size, 1.0)
    if lam.size > 1:
        radius[order[:-1]] = np.minimum(radius[order[:-1]], 0.25 * gaps)
        radius[order[1:]] = np.minimum(radius[order[1:]], 0.25 * gaps)
    R = 10.0 * (1.0 + y0_norm**2 * np.max(np.abs(lam)))
    lo, hi = ps[0] - R, ps[-1] + R
    roots = []

    grid = np.linspace(lo, hi, grid_points)
    inside = np.zeros(grid.size, dtype=bool)
    for p, r in zip(poles, radius):
        inside |= np.abs(grid - p) < r
    edges = np.concatenate([poles - radius, poles + radius])
    grid = np.unique(np.concatenate([grid[~inside], edges]))
    # consecutive outside points only; pairs straddling a window are skipped
    fun = lambda m: secular_polynomial(lam, w, m)
    vals = fun(grid)
    mid = 0.5 * (grid[:-1] + grid[1:])
    straddle = np.zeros(mid.size, dtype=bool)
    for p, r in zip(poles, radius):
        straddle |= np.abs(mid - p) < r
    for k in np.nonzero((vals[:-1] * vals[1:] < 0) & ~straddle)[0]:
        roots.append((-1, _bisect(lambda m: float(fun(m)), grid[k], grid[k + 1], vals[k])))
    roots.extend((-1, m) for m in grid[vals == 0.0])

    local = np.geomspace(1e-300, 1.0, 4000)
    for g, (p, r) in enumerate(zip(poles, radius)):
        base = (lam[g] - lam) / lam[g]
        sgrid = np.concatenate([-r * local[::-1], [0.0], r * local])
        fun_s = lambda s, base=base: secular_polynomial(lam, w, s, base=base)
        roots.extend((g, s) for s in _scan(fun_s, sgrid) if abs(s) < r)

    if len(roots) > 2 * lam.size:
        raise AssertionError(f"{len(roots)} roots exceed the degree bound {2 * lam.size}")
    return roots


def _degenerate_points(sp):
    """KKT points at poles of eigenspaces that y0 does not touch."""
    pts = []
    for g, idx in enumerate(sp.groups.groups):
        if np.any(sp.y0[idx] != 0.0):
            continue
        lam_g = sp.values[idx[0]]
        mask = np.ones(sp.dim, dtype=bool)
        mask[idx] = False
        y = np.zeros(sp.dim)
        y[mask] = sp.y0[mask] / (1.0 - sp.values[mask] / lam_g)
        rem = (1.0 - float(np.sum(sp.values[mask] * y[mask] ** 2))) / lam_g
        if rem < -1e-12:
            continue
        for s in (1.0, -1.0):
            yc = y.copy()
            yc[idx[0]] = s * math.sqrt(max(rem, 0.0))
            pts.append(yc)
    return pts


def oracle_project_secular(sp, grid_points=GRID_POINTS):
    """Exhaustive KKT enumeration. Returns ``(best_y, best_dist2)``."""
    if sp.dim > MAX_DIM:
        raise CostGuard(f"oracle limited to n <= {MAX_DIM}, got n = {sp.dim}")
    lam_all, w_all = _group_data(sp)
    keep = w_all > 0
    lam, w = lam_all[keep], w_all[keep]
    kept = np.nonzero(keep)[0]
    pts = []
    for g, s in polynomial_roots(lam, w, float(np.linalg.norm(sp.y0)), grid_points):
        if g < 0:
            base = np.ones(sp.dim)
        else:
            base = (lam[g] - sp.values) / lam[g]
            base[sp.groups.groups[kept[g]]] = 0.0
        den = base + s * sp.values
        if np.any((den == 0.0) & (sp.y0 != 0.0)):
            continue
        pts.append(np.where(sp.y0 != 0.0, sp.y0 / np.where(den == 0.0, 1.0, den), 0.0))
    pts.extend(_degenerate_points(sp))
    if not pts:
        raise AssertionError("oracle found no KKT point")
    pts = np.array(pts)
    d2 = np.sum((pts - sp.y0) ** 2, axis=1)
    k = int(np.argmin(d2))
    return pts[k], float(d2[k])


def _golden(fun, a, b, steps=20):
    g = (math.sqrt(5.0) - 1.0) / 2.0
    c, d = b - g * (b - a), a + g * (b - a)
    fc, fd = fun(c), fun(d)
    for _ in range(steps):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - g * (b - a)
            fc = fun(c)
        else:
            a, c, fc = c, d, fd
            d = a + g * (b - a)
            fd = fun(d)
    return (a + b) / 2.0


def oracle_project_param2d(q, x0, N=1_000_000):
    """Dense parametric sampling of a 2D ellipse or hyperbola.

    Returns ``(best_x, best_dist)`` in original coordinates.
    """
    if q.dim != 2:
        raise Unsupported("parametric oracle only handles n = 2")
    try:
        sf = standardize(q)
    except Exception as exc:
        raise Unsupported(str(exc)) from exc
    x0 = np.asarray(x0, dtype=float)
    l1, l2 = sf.values
    y0 = sf.to_std(x0)
    if l2 > 0:
        curves = [lambda t: np.stack([np.cos(t) / math.sqrt(l1), np.sin(t) / math.sqrt(l2)], axis=-1)]
        span = (0.0, 2.0 * math.pi)
        dt = 2.0 * math.pi / N
        t = np.arange(N) * dt
    else:
        T = math.asinh(10.0 * (1.0 + np.linalg.norm(y0)) * math.sqrt(-l2))
        curves = [
            (lambda s: (lambda t: np.stack([s * np.cosh(t) / math.sqrt(l1), np.sinh(t) / math.sqrt(-l2)], axis=-1)))(s)
            for s in (1.0, -1.0)
        ]
        span = (-T, T)
        t = np.linspace(-T, T, N // 2)
        dt = t[1] - t[0]
    best = (math.inf, None)
    for curve in curves:
        xs = sf.from_std(curve(t))
        d = np.linalg.norm(xs - x0, axis=1)
        k = int(np.argmin(d))
        dist = lambda tt: float(np.linalg.norm(sf.from_std(curve(np.array(tt))) - x0))
        a, b = t[k] - dt, t[k] + dt
        if l2 < 0:
            a, b = max(a, span[0]), min(b, span[1])
        tt = _golden(dist, a, b)
        for cand in (tt, t[k]):
            dc = dist(cand)
            if dc < best[0]:
                best = (dc, sf.from_std(curve(np.array(cand))))
    return best[1], best[0]
