"""Affine arithmetic over the cut parameter.

Capacities, flows and excesses are all expressed as ``slope * lam +
intercept``, optionally flagged as infinite.  Keeping the family affine means
every root and every intersection of two capacity curves has a closed form,
which is what makes exact breakpoint computation possible.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

#: Global absolute comparison tolerance, applied to capacities and parameter
#: values alike.  An arc counts as saturated when its residual capacity is at
#: most EPS.
EPS = 1e-9


@dataclass(frozen=True)
class AffineFn:
    """A value that varies affinely with the parameter.

    ``infinite`` functions ignore their coefficients and evaluate to
    ``math.inf`` everywhere; they model uncuttable arcs.
    """

    slope: float = 0.0
    intercept: float = 0.0
    infinite: bool = False

    def __call__(self, lam: float) -> float:
        if self.infinite:
            return math.inf
        return self.slope * lam + self.intercept

    def __add__(self, other: "AffineFn") -> "AffineFn":
        if self.infinite or other.infinite:
            return AffineFn(0.0, 0.0, True)
        return AffineFn(self.slope + other.slope, self.intercept + other.intercept)

    def __sub__(self, other: "AffineFn") -> "AffineFn":
        if self.infinite:
            return AffineFn(0.0, 0.0, True)
        if other.infinite:
            raise ValueError("cannot subtract an infinite function")
        return AffineFn(self.slope - other.slope, self.intercept - other.intercept)

    def __neg__(self) -> "AffineFn":
        if self.infinite:
            raise ValueError("cannot negate an infinite function")
        return AffineFn(-self.slope, -self.intercept)

    def is_zero(self, tol: float = EPS) -> bool:
        return not self.infinite and abs(self.slope) <= tol and abs(self.intercept) <= tol


#: Zero function, handy as an accumulator seed.
ZERO = AffineFn()

#: Infinite capacity.
INF = AffineFn(infinite=True)


def smallest_root(fn: AffineFn, lam_lo: float) -> float:
    """Smallest ``lam >= lam_lo`` at which ``fn`` reaches zero.

    ``fn`` is a residual capacity function that is nonnegative at ``lam_lo``;
    the result is ``inf`` when the function never becomes nonpositive (flat,
    increasing, or infinite).  The root of a decreasing affine function is
    exact: ``-intercept / slope``.
    """
    if fn.infinite or fn.slope >= 0.0:
        return math.inf
    root = -fn.intercept / fn.slope
    # Nonnegativity at lam_lo can be violated by roundoff only; clamp so the
    # caller never travels backwards.
    return root if root > lam_lo else lam_lo


def intersection_lambda(c1: AffineFn, c2: AffineFn) -> float | None:
    """Parameter value at which two finite affine functions take equal values.

    Returns ``None`` for parallel functions (equal slopes), which either never
    meet or are identical.
    """
    if c1.infinite or c2.infinite:
        raise ValueError("intersection of infinite capacity functions is undefined")
    if c1.slope == c2.slope:
        return None
    return (c2.intercept - c1.intercept) / (c1.slope - c2.slope)
