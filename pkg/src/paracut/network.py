"""Parametric flow networks with affine capacities.

Arcs live in a flat array sorted by ``(tail, head)``.  Every arc has a reverse
partner (``rev[rev[a]] == a``), every non-terminal vertex has arcs to and from
both terminals (zero-capacity ones are added during normalization), and
per-vertex adjacency is the contiguous slice ``first_out[v]:first_out[v+1]``.
This index-based layout is shared by all solvers.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

from .affine import EPS, AffineFn

ArcSpec = tuple[int, int, AffineFn]


class NetworkError(ValueError):
    """Malformed network or operation argument."""


class MonotonicityError(NetworkError):
    """The capacity functions violate source-sink monotonicity."""

    def __init__(self, violations: list[tuple[int, str]]):
        self.violations = violations
        lines = ", ".join(f"arc {a}: {why}" for a, why in violations[:5])
        more = "" if len(violations) <= 5 else f" (+{len(violations) - 5} more)"
        super().__init__(f"network is not source-sink monotone: {lines}{more}")


class ParametricNetwork:
    """Immutable normalized flow network with affine arc capacities."""

    __slots__ = (
        "n", "source", "sink", "lambda_min", "lambda_max",
        "tail", "head", "slope", "intercept", "infinite", "rev", "first_out",
        "orig_ids",
    )

    def __init__(self, n, source, sink, lambda_min, lambda_max,
                 tail, head, slope, intercept, infinite, rev, first_out,
                 orig_ids=None):
        self.n = int(n)
        self.source = int(source)
        self.sink = int(sink)
        self.lambda_min = float(lambda_min)
        self.lambda_max = float(lambda_max)
        self.tail = tail
        self.head = head
        self.slope = slope
        self.intercept = intercept
        self.infinite = infinite
        self.rev = rev
        self.first_out = first_out
        #: When this network was produced by contraction, maps new vertex ids
        #: back to ids in the network it was derived from.
        self.orig_ids = orig_ids

    @property
    def m(self) -> int:
        return self.tail.shape[0]

    def arc_fn(self, a: int) -> AffineFn:
        return AffineFn(float(self.slope[a]), float(self.intercept[a]), bool(self.infinite[a]))

    def iter_arcs(self) -> Iterator[ArcSpec]:
        for a in range(self.m):
            yield int(self.tail[a]), int(self.head[a]), self.arc_fn(a)

    def out_arcs(self, v: int) -> range:
        return range(int(self.first_out[v]), int(self.first_out[v + 1]))

    def find_arc(self, u: int, v: int) -> int | None:
        """Arc id of ``(u, v)`` or ``None``; arcs are unique per (tail, head)."""
        lo, hi = int(self.first_out[u]), int(self.first_out[u + 1])
        pos = lo + int(np.searchsorted(self.head[lo:hi], v))
        if pos < hi and self.head[pos] == v:
            return pos
        return None

    def __eq__(self, other) -> bool:
        if not isinstance(other, ParametricNetwork):
            return NotImplemented
        return (
            self.n == other.n
            and self.source == other.source
            and self.sink == other.sink
            and self.lambda_min == other.lambda_min
            and self.lambda_max == other.lambda_max
            and self.m == other.m
            and bool(np.array_equal(self.tail, other.tail))
            and bool(np.array_equal(self.head, other.head))
            and bool(np.array_equal(self.slope, other.slope))
            and bool(np.array_equal(self.intercept, other.intercept))
            and bool(np.array_equal(self.infinite, other.infinite))
        )

    def __repr__(self) -> str:
        return (f"ParametricNetwork(n={self.n}, m={self.m}, s={self.source}, "
                f"t={self.sink}, lam=[{self.lambda_min}, {self.lambda_max}])")


class StaticNetwork:
    """A parametric network evaluated at a fixed parameter value.

    Shares the structural arrays of its parent; ``cap`` holds plain floats
    with ``inf`` for uncuttable arcs.
    """

    __slots__ = ("n", "source", "sink", "tail", "head", "cap", "rev", "first_out")

    def __init__(self, n, source, sink, tail, head, cap, rev, first_out):
        self.n = int(n)
        self.source = int(source)
        self.sink = int(sink)
        self.tail = tail
        self.head = head
        self.cap = cap
        self.rev = rev
        self.first_out = first_out

    @property
    def m(self) -> int:
        return self.tail.shape[0]


@dataclass
class Cut:
    """A source/sink partition together with its crossing capacity."""

    sink_side: np.ndarray  # bool per vertex, True on the sink side
    capacity_fn: AffineFn


@dataclass
class BreakpointFunction:
    """Per-vertex parameter values at which vertices join the source side.

    ``values[v]`` is the smallest parameter for which ``v`` lies in the source
    component of the sink-minimal minimum cut; ``inf`` marks vertices that stay
    on the sink side throughout the interval.  For any ``lam``, the sink side
    of the represented cut is ``{v : values[v] > lam}``.
    """

    values: np.ndarray
    source: int
    sink: int

    @property
    def n(self) -> int:
        return self.values.shape[0]

    def sink_side_at(self, lam: float) -> np.ndarray:
        return self.values > lam

    def finite_values(self) -> np.ndarray:
        """Sorted distinct finite values, excluding the initial source side."""
        vals = self.values[np.isfinite(self.values)]
        vals = vals[vals > self.values[self.source]]
        return np.unique(vals)

    def __getitem__(self, v: int) -> float:
        return float(self.values[v])


def build_network(n: int, arcs: Iterable[ArcSpec], source: int, sink: int,
                  lambda_min: float, lambda_max: float) -> ParametricNetwork:
    """Assemble a normalized network from raw arc specs.

    Parallel arcs are merged by summing their capacity functions, self-loops
    are dropped, missing reverse arcs and missing terminal arcs are added with
    capacity zero, and arcs are sorted by ``(tail, head)``.  The same routine
    backs :func:`normalize`, which makes normalization idempotent by
    construction.
    """
    if not (0 <= source < n and 0 <= sink < n) or source == sink:
        raise NetworkError(f"invalid terminals s={source}, t={sink} for n={n}")
    if not lambda_min < lambda_max:
        raise NetworkError(f"empty parameter interval [{lambda_min}, {lambda_max}]")

    merged: dict[tuple[int, int], AffineFn] = {}
    for tail, head, fn in arcs:
        if not (0 <= tail < n and 0 <= head < n):
            raise NetworkError(f"arc ({tail}, {head}) out of range for n={n}")
        if tail == head:
            continue
        key = (tail, head)
        merged[key] = merged[key] + fn if key in merged else fn

    zero = AffineFn()
    for (u, v) in list(merged.keys()):
        merged.setdefault((v, u), zero)
    for v in range(n):
        if v == source or v == sink:
            continue
        merged.setdefault((source, v), zero)
        merged.setdefault((v, source), zero)
        merged.setdefault((v, sink), zero)
        merged.setdefault((sink, v), zero)

    keys = sorted(merged.keys())
    m = len(keys)
    tail_a = np.empty(m, np.int64)
    head_a = np.empty(m, np.int64)
    slope_a = np.zeros(m, np.float64)
    icpt_a = np.zeros(m, np.float64)
    inf_a = np.zeros(m, np.bool_)
    for a, (u, v) in enumerate(keys):
        fn = merged[(u, v)]
        tail_a[a] = u
        head_a[a] = v
        if fn.infinite:
            inf_a[a] = True
        else:
            slope_a[a] = fn.slope
            icpt_a[a] = fn.intercept

    index = {k: a for a, k in enumerate(keys)}
    rev_a = np.empty(m, np.int64)
    for a, (u, v) in enumerate(keys):
        rev_a[a] = index[(v, u)]

    first_out = np.zeros(n + 1, np.int64)
    np.add.at(first_out, tail_a + 1, 1)
    np.cumsum(first_out, out=first_out)

    return ParametricNetwork(n, source, sink, lambda_min, lambda_max,
                             tail_a, head_a, slope_a, icpt_a, inf_a, rev_a, first_out)


def normalize(net: ParametricNetwork) -> ParametricNetwork:
    """Rebuild a network in canonical form; idempotent."""
    return build_network(net.n, net.iter_arcs(), net.source, net.sink,
                         net.lambda_min, net.lambda_max)


def check_monotone(net: ParametricNetwork, raise_on_violation: bool = False) -> list[tuple[int, str]]:
    """Check source-sink monotonicity and endpoint nonnegativity.

    Rules: source arcs non-decreasing, sink arcs non-increasing, every other
    arc constant, and every capacity nonnegative at both interval endpoints
    (affine, so nonnegative on the whole interval).  Arcs between the two
    terminals are exempt from the slope rules.  Returns the violation list,
    empty when the network is monotone.
    """
    s, t = net.source, net.sink
    violations: list[tuple[int, str]] = []
    for a in range(net.m):
        if net.infinite[a]:
            continue
        u, v = int(net.tail[a]), int(net.head[a])
        sl = float(net.slope[a])
        if u == s and v == t:
            pass
        elif u == s:
            if sl < 0.0:
                violations.append((a, "source arc with decreasing capacity"))
        elif v == t:
            if sl > 0.0:
                violations.append((a, "sink arc with increasing capacity"))
        elif sl != 0.0:
            violations.append((a, "interior arc with non-constant capacity"))
        lo = sl * net.lambda_min + float(net.intercept[a])
        hi = sl * net.lambda_max + float(net.intercept[a])
        if lo < -EPS or hi < -EPS:
            violations.append((a, "capacity negative on the parameter interval"))
    if violations and raise_on_violation:
        raise MonotonicityError(violations)
    return violations


def evaluate_at(net: ParametricNetwork, lam: float) -> StaticNetwork:
    """Constant-capacity snapshot of the network at ``lam``."""
    if lam < net.lambda_min - EPS or lam > net.lambda_max + EPS:
        raise NetworkError(
            f"lambda={lam} outside [{net.lambda_min}, {net.lambda_max}]")
    cap = net.slope * lam + net.intercept
    cap[net.infinite] = np.inf
    return StaticNetwork(net.n, net.source, net.sink,
                         net.tail, net.head, cap, net.rev, net.first_out)


def _as_sink_mask(net: ParametricNetwork, sink_side) -> np.ndarray:
    if isinstance(sink_side, np.ndarray) and sink_side.dtype == np.bool_:
        mask = sink_side
    else:
        mask = np.zeros(net.n, np.bool_)
        mask[list(sink_side)] = True
    return mask


def cut_capacity(net: ParametricNetwork, sink_side) -> AffineFn:
    """Capacity function of the cut with the given sink side.

    ``sink_side`` may be a boolean mask or any iterable of vertex ids; it must
    contain the sink and not the source.
    """
    mask = _as_sink_mask(net, sink_side)
    if mask[net.source] or not mask[net.sink]:
        raise NetworkError("sink side must contain t and exclude s")
    crossing = ~mask[net.tail] & mask[net.head]
    if bool(np.any(net.infinite & crossing)):
        return AffineFn(infinite=True)
    return AffineFn(float(net.slope[crossing].sum()),
                    float(net.intercept[crossing].sum()))


def contract_source_set(net: ParametricNetwork, vertices) -> ParametricNetwork:
    """Contract a vertex set into the source.

    Arcs incident to contracted vertices are redirected to ``s``, parallel
    arcs are merged by capacity summation and self-loops at ``s`` vanish.
    The result's ``orig_ids`` maps its vertex ids back to the input network.
    """
    gone = np.zeros(net.n, np.bool_)
    idx = list(vertices) if not isinstance(vertices, np.ndarray) else vertices
    gone[idx] = True
    if gone[net.sink]:
        raise NetworkError("cannot contract the sink into the source")
    gone[net.source] = False

    keep = ~gone
    new_id = np.cumsum(keep) - 1
    new_id[gone] = new_id[net.source]
    n_new = int(keep.sum())

    arcs: list[ArcSpec] = []
    for u, v, fn in net.iter_arcs():
        nu, nv = int(new_id[u]), int(new_id[v])
        if nu != nv:
            arcs.append((nu, nv, fn))
    result = build_network(n_new, arcs, int(new_id[net.source]), int(new_id[net.sink]),
                           net.lambda_min, net.lambda_max)
    result.orig_ids = np.flatnonzero(keep)
    return result
