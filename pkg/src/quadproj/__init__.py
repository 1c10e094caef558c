"""Exact Euclidean projection onto non-cylindrical central quadrics."""
from .errors import QuadprojError, UnsupportedQuadric
from .projection import (
    Candidate,
    ProjectionResult,
    degenerate_candidates,
    f_derivative,
    f_value,
    kkt_residual,
    newton_root,
    project,
    project_hyperplane,
    root_interval,
    secular_problem,
    x_of_mu,
)
from .quadric import (
    Kind,
    Quadric,
    QuadricClass,
    StandardForm,
    classify,
    evaluate,
    from_std,
    is_feasible,
    new_quadric,
    standardize,
    to_std,
)
from .spectral import eig_sym, group_eigenvalues

__version__ = "0.1.0"
