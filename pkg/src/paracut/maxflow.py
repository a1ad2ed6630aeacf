"""Static max-flow solvers and residual-reachability cut extraction.

Three solvers share one contract: ``solve_ibfs`` (tree-based, also yields the
sink distances and shortest-path tree the parametric sweep starts from),
``solve_prf`` (highest-label push-relabel baseline) and ``solve_ek``
(shortest-augmenting-path, kept as an independent oracle).  All three return
bit-identical results for identical inputs and agree on the flow value by the
max-flow/min-cut theorem.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _mfkernels as _k
from .affine import EPS
from .network import StaticNetwork

INF_DIST = _k.INF_DIST


@dataclass
class StaticFlow:
    """An antisymmetric arc flow together with its value."""

    flow: np.ndarray
    value: float

    def check(self, net: StaticNetwork, tol: float = 1e-6) -> None:
        """Assert capacity, antisymmetry and conservation constraints."""
        f = self.flow
        if np.any(f > net.cap + tol):
            raise AssertionError("capacity constraint violated")
        if np.any(np.abs(f + f[net.rev]) > tol):
            raise AssertionError("antisymmetry violated")
        balance = np.zeros(net.n)
        np.add.at(balance, net.head, f)
        balance[net.source] = 0.0
        balance[net.sink] = 0.0
        if np.any(np.abs(balance) > tol):
            raise AssertionError("flow conservation violated")


class SinkSolve(NamedTuple):
    """Result of ``solve_ibfs``: flow plus the sink-side tree data."""

    flow: StaticFlow
    dist: np.ndarray        # residual distance to t, INF_DIST if unreachable
    parent_arc: np.ndarray  # tree arc towards t, -1 outside the sink component


def _finite_caps(net: StaticNetwork) -> np.ndarray:
    """Replace infinite capacities with a bound no flow can reach."""
    cap = net.cap
    inf_mask = ~np.isfinite(cap)
    if not inf_mask.any():
        return cap
    big = float(cap[~inf_mask].sum()) + 1.0
    cap = cap.copy()
    cap[inf_mask] = big
    return cap


def _value(net: StaticNetwork, flow: np.ndarray) -> float:
    return float(_k.flow_value(net.first_out, net.head, net.rev, flow,
                               np.int64(net.sink)))


def solve_ek(net: StaticNetwork) -> StaticFlow:
    """Edmonds-Karp max flow (cross-validation oracle)."""
    cap = _finite_caps(net)
    flow = _k.ek_maxflow(net.first_out, net.head, net.rev, cap,
                         np.int64(net.source), np.int64(net.sink))
    return StaticFlow(flow, _value(net, flow))


def solve_prf(net: StaticNetwork) -> StaticFlow:
    """Highest-label push-relabel max flow with gap and global relabeling."""
    cap = _finite_caps(net)
    flow = _k.prf_maxflow(net.first_out, net.head, net.rev, cap,
                          np.int64(net.source), np.int64(net.sink))
    return StaticFlow(flow, _value(net, flow))


def solve_ibfs(net: StaticNetwork) -> SinkSolve:
    """Incremental BFS max flow plus exact sink distances and tree.

    The distances and the reverse shortest-path tree are recomputed by a
    breadth-first sweep of the final residual graph, so they are exact for
    the sink component regardless of the tree state the solver ended in.
    """
    cap = _finite_caps(net)
    flow, _ = _k.ibfs_maxflow(net.first_out, net.head, net.rev, cap,
                              np.int64(net.source), np.int64(net.sink))
    dist, parent_arc = _k.reverse_bfs(net.first_out, net.head, net.rev, cap,
                                      flow, np.int64(net.sink))
    return SinkSolve(StaticFlow(flow, _value(net, flow)), dist, parent_arc)


def sink_component(net: StaticNetwork, flow: StaticFlow) -> np.ndarray:
    """Vertices with a residual path to the sink, as a boolean mask.

    For a maximum flow this is the sink side of the unique sink-minimal
    minimum cut.  Residual means remaining capacity above EPS.
    """
    cap = _finite_caps(net)
    dist, _ = _k.reverse_bfs(net.first_out, net.head, net.rev, cap,
                             flow.flow, np.int64(net.sink))
    return dist < INF_DIST
