"""Exact oriented L(2,1)-labeling of small digraphs and regular grid patches."""
from .digraph import (
    CapacityError,
    ConstraintPairs,
    OrientedGraph,
    automorphisms,
    canonical_form,
    constraint_pairs,
    girth,
    longest_dipath,
    orient,
    reverse,
)
from .lattice import Grid, GridError, TilingKind, build_custom, build_grid, neighbors, patch
from .solver import (
    BudgetExceeded,
    Labeling,
    SolveResult,
    brute_force_lambda,
    lower_bound,
    solve_lambda,
    solve_lambda_undirected,
    upper_bound,
    verify,
)

__version__ = "0.1.0"
