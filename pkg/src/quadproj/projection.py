"""Exact projection onto a non-cylindrical central quadric.

In standard coordinates the problem is

    min ||y - y0||^2   subject to   sum_i lambda_i y_i**2 = 1.

Stationarity gives ``y(mu) = y0 / (1 + mu * lambda)`` and feasibility turns
into the scalar equation ``f(mu) = 0`` with

    f(mu) = sum_{i: y0_i != 0} lambda_i * (y0_i / (1 + mu * lambda_i))**2 - 1.

On the interval between the extreme poles ``-1/lambda_1`` and ``-1/lambda_n``
(or ``+inf`` when every eigenvalue is positive) all denominators are positive
and ``f`` is strictly decreasing, so it has at most one root there. When some
eigenspace component of ``y0`` vanishes, extra KKT points sit at the pole of
that eigenspace; these are enumerated in closed form and the closest
candidate wins.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from .errors import InternalNoCandidate, MaxIterations, PoleEvaluation, ZeroNormal
from .quadric import standardize
from .spectral import GROUP_TOL, group_eigenvalues

AXIS_TOL = 1e-11
SLACK_TOL = 1e-12
POLE_TOL = 1e-14
MAX_ITER = 100
TIE_TOL = 1e-12

NEWTON = "newton"
DEGENERATE = "degenerate"


@dataclass(frozen=True, eq=False)
class SecularProblem:
    values: np.ndarray
    groups: object  # EigenGroups
    y0: np.ndarray  # entries below the axis tolerance are set to exactly 0
    poles: np.ndarray  # ascending, one per group
    active: np.ndarray  # bool per index: y0_i != 0
    group_active: np.ndarray  # bool per group: some y0_i != 0 in the group

    @property
    def dim(self):
        return self.values.shape[0]

    @property
    def degenerate(self):
        return not bool(np.all(self.active))


@dataclass(frozen=True)
class RootInterval:
    lower: float
    upper: float
    lower_limit_sign: int
    upper_limit_sign: int
    lower_infinite: bool  # f -> +inf at the lower end
    upper_infinite: bool  # f -> -inf at the upper end (finite pole)

    @property
    def has_root(self):
        return self.lower_limit_sign > 0 and self.upper_limit_sign < 0


@dataclass(frozen=True, eq=False)
class Candidate:
    y: np.ndarray
    mu: float
    kind: str
    dist2: float
    group: int = None
    branch: int = None


@dataclass(frozen=True, eq=False)
class ProjectionResult:
    point: np.ndarray
    distance: float
    multiplier: float
    degenerate: bool
    newton_iterations: int
    candidates: list = field(default_factory=list)
    chosen: Candidate = None


def secular_problem(values, y0, axis_tol=AXIS_TOL, group_tol=GROUP_TOL):
    values = np.asarray(values, dtype=float)
    y0 = np.array(y0, dtype=float)
    if values[0] <= 0:
        raise ValueError("the largest eigenvalue must be positive")
    groups = group_eigenvalues(values, group_tol)
    thresh = axis_tol * (1.0 + np.linalg.norm(y0))
    y0[np.abs(y0) <= thresh] = 0.0
    active = y0 != 0.0
    group_active = np.logical_or.reduceat(active, groups.starts)
    # descending eigenvalues: positive ones give ascending negative poles,
    # then negative ones give ascending positive poles
    reps = groups.representatives
    poles = -1.0 / reps
    order = np.argsort(poles)
    return SecularProblem(
        values=values,
        groups=groups,
        y0=y0,
        poles=poles[order],
        active=active,
        group_active=group_active,
    )


def _denominators(sp, mu):
    den = 1.0 + mu * sp.values[sp.active]
    near = np.abs(den) <= POLE_TOL * (1.0 + np.abs(mu * sp.values[sp.active]))
    if np.any(near):
        raise PoleEvaluation(f"mu = {mu!r} is at a pole of f")
    return den


def f_value(sp, mu):
    den = _denominators(sp, mu)
    t = sp.y0[sp.active] / den
    return float(np.dot(sp.values[sp.active], t * t) - 1.0)


def f_derivative(sp, mu):
    den = _denominators(sp, mu)
    lam = sp.values[sp.active]
    y = sp.y0[sp.active]
    return float(-2.0 * np.sum(lam * lam * y * y / den**3))


def _f_and_derivative(sp, mu, lam, y):
    den = 1.0 + mu * lam
    if np.any(np.abs(den) <= POLE_TOL * (1.0 + np.abs(mu * lam))):
        raise PoleEvaluation(f"mu = {mu!r} is at a pole of f")
    t = y / den
    lt2 = lam * t * t
    return float(np.sum(lt2) - 1.0), float(-2.0 * np.sum(lam * lt2 / den))


def x_of_mu(sp, mu):
    y = np.zeros_like(sp.y0)
    y[sp.active] = sp.y0[sp.active] / _denominators(sp, mu)
    return y


def root_interval(sp):
    lam = sp.values
    g_top, g_bot = 0, len(sp.groups) - 1
    lower = -1.0 / lam[0]
    if sp.group_active[g_top]:
        lo_sign, lo_inf = 1, True
    else:
        lo_sign, lo_inf = int(np.sign(f_value(sp, lower))), False
    if lam[-1] < 0:
        upper = -1.0 / lam[-1]
        if sp.group_active[g_bot]:
            up_sign, up_inf = -1, True
        else:
            up_sign, up_inf = int(np.sign(f_value(sp, upper))), False
    else:
        upper = math.inf
        up_sign, up_inf = -1, False
    return RootInterval(lower, upper, lo_sign, up_sign, lo_inf, up_inf)


def newton_root(sp, ri=None, max_iter=MAX_ITER):
    """Safeguarded Newton iteration for the root of ``f`` inside the interval.

    Returns ``(mu_star, iterations)``. Bracket construction is not counted
    as iterations.
    """
    mu, _, it = _secular_root(sp, ri, max_iter)
    return mu, it


def _secular_root(sp, ri=None, max_iter=MAX_ITER):
    # The unknown is the offset t = mu - anchor, where the anchor is the pole
    # bounding the side of 0 that holds the root. Denominators become
    # c_i + lambda_i t with c_i = 1 + anchor * lambda_i, exactly 0 on the
    # anchor's eigenspace, so roots lying within 1e-10 of a pole keep full
    # relative precision. A bracket lo < t < hi with F(lo) > 0 > F(hi) is kept
    # and Newton steps leaving it are replaced by bisection.
    if ri is None:
        ri = root_interval(sp)
    if not ri.has_root:
        raise ValueError("f has no root on the interval")
    lam = sp.values[sp.active]
    y = sp.y0[sp.active]

    f0 = _f_and_derivative(sp, 0.0, lam, y)[0]
    ftol = 1e-12 * (1.0 + abs(f0))
    if abs(f0) <= ftol:
        return 0.0, sp.y0.copy(), 0

    if f0 > 0:
        anchor = 0.0 if math.isinf(ri.upper) else ri.upper
    else:
        anchor = ri.lower
    c = 1.0 + anchor * lam
    if anchor != 0.0:
        c[lam == (-1.0 / anchor)] = 0.0

    def fd(t):
        den = c + lam * t
        if np.any(den == 0.0):
            raise PoleEvaluation(f"mu = {anchor + t!r} is at a pole of f")
        q = y / den
        lq2 = lam * q * q
        return float(np.sum(lq2) - 1.0), float(-2.0 * np.sum(lam * lq2 / den))

    t0 = -anchor  # mu = 0
    if f0 > 0:
        lo = t0
        if math.isinf(ri.upper):
            step = 1.0
            while (fstep := fd(step)[0]) > 0:
                lo = step
                step *= 2.0
            hi = step
            if fstep == 0.0:
                lo = hi = step
        elif ri.upper_infinite:
            off = 1e-8 * (1.0 + abs(ri.upper))
            hi, lo = _approach_pole(fd, 0.0, -off, want_positive=False, other=lo)
        else:
            hi = 0.0
    else:
        hi = t0
        if ri.lower_infinite:
            off = 1e-8 * (1.0 + abs(ri.lower))
            lo, hi = _approach_pole(fd, 0.0, off, want_positive=True, other=hi)
        else:
            lo = 0.0

    t = t0 if lo < t0 < hi else 0.5 * (lo + hi)
    for it in range(1, max_iter + 1):
        if lo == hi:
            t = lo
            break
        fv, dv = fd(t)
        if fv == 0.0:
            break
        if fv > 0:
            lo = t
        else:
            hi = t
        new = t - fv / dv if abs(dv) >= 1e-300 else math.nan
        if abs(fv) <= ftol:
            # converged; one last Newton step takes the residual to roundoff
            if lo < new < hi:
                t = new
            break
        if new == t or hi - lo <= 4e-16 * max(abs(lo), abs(hi)):
            break
        if not lo < new < hi:
            new = 0.5 * (lo + hi)
        t = new
    else:
        raise MaxIterations(f"Newton did not converge in {max_iter} iterations")
    ystar = np.zeros_like(sp.y0)
    ystar[sp.active] = y / (c + lam * t)
    return anchor + t, ystar, it


def _approach_pole(fd, pole, offset, want_positive, other):
    """Walk from ``pole + offset`` towards the pole, halving the offset, until
    f has the sign it takes right next to the pole. Returns the point reached
    and the tightest opposite-sign point seen (starting from ``other``)."""
    for _ in range(1100):
        mu = pole + offset
        fv = fd(mu)[0]
        if (fv > 0) == want_positive and fv != 0:
            return mu, other
        other = mu
        offset *= 0.5
    raise MaxIterations("could not bracket the root next to a pole")


def degenerate_candidates(sp, slack_tol=SLACK_TOL):
    """Closed-form KKT points at the pole of each eigenspace that ``y0`` misses."""
    out = []
    for g in np.nonzero(~sp.group_active)[0]:
        idx = sp.groups.groups[g]
        i0 = idx[0]
        lam_g = sp.values[i0]
        mu = -1.0 / lam_g
        y = np.zeros_like(sp.y0)
        rest = sp.active.copy()
        rest[idx] = False
        y[rest] = sp.y0[rest] / (1.0 + mu * sp.values[rest])
        sigma = 1.0 - float(np.dot(sp.values[rest], y[rest] ** 2))
        ratio = sigma / lam_g
        if ratio < -slack_tol:
            continue
        root = math.sqrt(max(0.0, ratio))
        for branch in ((1, -1) if root > 0 else (1,)):
            yc = y.copy()
            yc[i0] = branch * root
            out.append(
                Candidate(yc, mu, DEGENERATE, float(np.sum((yc - sp.y0) ** 2)), group=int(g), branch=branch)
            )
    return out


def kkt_residual(sp, y, mu):
    y = np.asarray(y, dtype=float)
    stat = 2.0 * (y - sp.y0) + 2.0 * mu * sp.values * y
    feas = float(np.dot(sp.values, y * y) - 1.0)
    return float(np.sqrt(np.dot(stat, stat) + feas * feas) / (1.0 + np.linalg.norm(sp.y0)))


def solve_secular(sp):
    """All candidates in standard coordinates, the chosen one, and the Newton iteration count."""
    cands = degenerate_candidates(sp)
    iters = 0
    ri = root_interval(sp)
    if ri.has_root:
        mu, y, iters = _secular_root(sp, ri)
        cands.append(Candidate(y, mu, NEWTON, float(np.sum((y - sp.y0) ** 2))))
    if not cands:
        raise InternalNoCandidate("no KKT candidate found; this should be unreachable")
    cands.sort(key=lambda c: c.dist2)
    best = cands[0].dist2
    ties = [c for c in cands if c.dist2 <= best + TIE_TOL * (1.0 + best)]
    chosen = min(ties, key=lambda c: (c.kind != NEWTON, tuple(c.y)))
    return cands, chosen, iters


def project(q, x0, axis_tol=AXIS_TOL, standard_form=None):
    """Project ``x0`` onto the quadric ``q``.

    ``standard_form`` may be passed to reuse one eigendecomposition across
    many points. Returns a :class:`ProjectionResult`; ``candidates`` lists
    every KKT point considered, nearest first, in standard coordinates.
    """
    sf = standard_form if standard_form is not None else standardize(q)
    x0 = np.asarray(x0, dtype=float)
    if x0.shape != (sf.dim,):
        raise ValueError(f"point must have shape ({sf.dim},), got {x0.shape}")
    sp = secular_problem(sf.values, sf.to_std(x0), axis_tol=axis_tol)
    cands, chosen, iters = solve_secular(sp)
    point = sf.from_std(chosen.y)
    return ProjectionResult(
        point=point,
        distance=float(np.linalg.norm(point - x0)),
        multiplier=chosen.mu,
        degenerate=sp.degenerate,
        newton_iterations=iters,
        candidates=cands,
        chosen=chosen,
    )


def project_hyperplane(bvec, c, x0):
    """Closest point to ``x0`` on ``{x : <b, x> + c = 0}``."""
    bvec = np.asarray(bvec, dtype=float)
    x0 = np.asarray(x0, dtype=float)
    nb2 = float(bvec @ bvec)
    if nb2 == 0.0:
        raise ZeroNormal("hyperplane normal is zero")
    return x0 - ((bvec @ x0 + c) / nb2) * bvec
