"""paracut: breakpoint functions for source-sink-monotone parametric min cuts.

A parametric flow network has affine capacities ``slope * lam + intercept``
that are non-decreasing on source arcs, non-increasing on sink arcs and
constant elsewhere.  As the parameter grows, the sink-minimal minimum cut
shrinks through a nested family of at most ``n`` cuts; the breakpoint
function maps every vertex to the parameter value at which it crosses over
to the source side.

The main entry points are :func:`paracut.pbfs.run` (ascending parametric
sweep), :func:`paracut.dichotomic.ds_run` (recursive bisection baseline,
exact or epsilon-approximate) and :func:`paracut.verify.oracle_breakpoints`
(small-instance reference oracle).
"""
from .affine import EPS, AffineFn, intersection_lambda, smallest_root
from .network import (
    BreakpointFunction,
    Cut,
    MonotonicityError,
    NetworkError,
    ParametricNetwork,
    StaticNetwork,
    build_network,
    check_monotone,
    contract_source_set,
    cut_capacity,
    evaluate_at,
    normalize,
)

__all__ = [
    "EPS",
    "AffineFn",
    "BreakpointFunction",
    "Cut",
    "MonotonicityError",
    "NetworkError",
    "ParametricNetwork",
    "StaticNetwork",
    "build_network",
    "check_monotone",
    "contract_source_set",
    "cut_capacity",
    "evaluate_at",
    "intersection_lambda",
    "normalize",
    "smallest_root",
]

__version__ = "0.1.0"
