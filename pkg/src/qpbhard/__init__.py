"""Exponentially hard instances for increasing local search on quadratic
pseudo-boolean functions, with exact-arithmetic oracles that check them."""

from .core import (
    QpbFunction,
    SearchState,
    apply_flip,
    discrete_derivative,
    eval_at,
    flip_gain,
    improving_moves,
    is_local_max,
    make_state,
)
from .families import Family, FamilyInstance, MMode, build, build_f, build_g
from .search import PivotRule, Trace, run_search

__all__ = [
    "Family",
    "FamilyInstance",
    "MMode",
    "PivotRule",
    "QpbFunction",
    "SearchState",
    "Trace",
    "apply_flip",
    "build",
    "build_f",
    "build_g",
    "discrete_derivative",
    "eval_at",
    "flip_gain",
    "improving_moves",
    "is_local_max",
    "make_state",
    "run_search",
]

__version__ = "0.1.0"
