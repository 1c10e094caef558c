"""Cost split between the eigendecomposition and the secular solve."""
import statistics
import time

import numpy as np

from .instances import random_quadric
from .projection import secular_problem, solve_secular
from .quadric import is_feasible, standardize
from .spectral import eig_sym


def run_bench(n=500, count=100, seed=0):
    rng = np.random.default_rng(seed)
    t_eig, t_root, iters = [], [], []
    feasible = 0
    for _ in range(count):
        q = random_quadric(n, rng)
        x0 = rng.standard_normal(n)

        t = time.perf_counter()
        ed = eig_sym(q.A)
        t_eig.append(time.perf_counter() - t)

        sf = standardize(q, eig=ed)
        y0 = sf.to_std(x0)

        t = time.perf_counter()
        sp = secular_problem(sf.values, y0)
        _, chosen, it = solve_secular(sp)
        t_root.append(time.perf_counter() - t)

        iters.append(it)
        feasible += bool(is_feasible(q, sf.from_std(chosen.y)))
    mean_eig = statistics.fmean(t_eig)
    mean_root = statistics.fmean(t_root)
    return {
        "n": n,
        "count": count,
        "seed": seed,
        "eig_mean_s": mean_eig,
        "eig_median_s": statistics.median(t_eig),
        "root_mean_s": mean_root,
        "root_median_s": statistics.median(t_root),
        "ratio_mean": mean_eig / mean_root,
        "newton_iterations_median": statistics.median(iters),
        "newton_iterations_max": max(iters),
        "feasible": feasible,
    }
