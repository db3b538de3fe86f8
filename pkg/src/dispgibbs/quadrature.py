"""Clenshaw-Curtis quadrature along piecewise-affine complex contours.

The integrands we care about (exp of a polynomial phase, divided by a power
of iz) are analytic along every contour the package builds, so spectral
convergence of Clenshaw-Curtis on each affine segment is the cheapest route
to 1e-10..1e-12 accuracy.  Segments are refined independently by doubling
the rule order until two successive estimates agree.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "NoConvergence",
    "NonFinite",
    "clenshaw_curtis_rule",
    "integrate_segment",
    "integrate_contour",
]


class NoConvergence(RuntimeError):
    """Adaptive refinement hit the order cap without the estimates settling.

    Carries the last two estimates so callers can judge how bad it is.
    """

    def __init__(self, message, last=None, previous=None):
        super().__init__(message)
        self.last = last
        self.previous = previous


class NonFinite(ValueError):
    """Integrand returned nan/inf on a quadrature node."""


@lru_cache(maxsize=None)
def clenshaw_curtis_rule(order):
    """Nodes and weights of the (order+1)-point Clenshaw-Curtis rule on [-1,1].

    Nodes are x_k = cos(pi k / order), k = 0..order (descending).  Weights
    come from integrating the Chebyshev interpolant term by term:
    int_-1^1 T_j = 2/(1-j^2) for even j, 0 for odd j.  order=2 gives the
    familiar {1/3, 4/3, 1/3}.
    """
    if order < 2 or order % 2 != 0:
        raise ValueError("order must be an even integer >= 2")
    k = np.arange(order + 1)
    theta = np.pi * k / order
    nodes = np.cos(theta)
    j = np.arange(0, order + 1, 2)
    moments = 2.0 / (1.0 - j.astype(float) ** 2)
    moments[j == 1] = 0.0  # unreachable (j even), kept for clarity
    # halve the first/last terms of the DCT sum (trapezoid-in-j)
    scale = np.ones_like(moments)
    scale[0] = 0.5
    if j[-1] == order:
        scale[-1] = 0.5
    cosmat = np.cos(np.outer(theta, j))
    weights = (2.0 / order) * (cosmat @ (moments * scale))
    weights[0] *= 0.5
    weights[-1] *= 0.5
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def integrate_segment(f, start, end, order):
    """Fixed-order rule applied to one affine segment start -> end."""
    nodes, weights = clenshaw_curtis_rule(order)
    start = complex(start)
    end = complex(end)
    mid = 0.5 * (start + end)
    half = 0.5 * (end - start)
    z = mid + half * nodes
    fz = np.asarray(f(z), dtype=complex)
    if not np.all(np.isfinite(fz)):
        raise NonFinite(f"integrand not finite on segment {start} -> {end}")
    return half * np.dot(weights, fz), float(np.max(np.abs(fz)))


def _integrate_segment_adaptive(f, seg, tol, max_order):
    order = max(8, seg.order)
    if order % 2:
        order += 1
    seglen = abs(seg.end - seg.start)
    prev = None
    val = None
    dprev = None
    while order <= max_order:
        new, fmax = integrate_segment(f, seg.start, seg.end, order)
        prev, val = val, new
        if prev is not None:
            # relative test, with a floor tied to the integrand scale so that
            # segments whose value nearly cancels still converge once the
            # rule saturates
            d = abs(val - prev)
            floor = 1e-3 * tol * fmax * seglen
            if d <= tol * abs(val) + floor:
                return val
            # roundoff plateau: when the integrand carries a huge absolute
            # phase, node values are only good to eps*phase and doubling the
            # order stops helping; accept once the stall is negligible
            # against the integrand scale
            if dprev is not None and d >= 0.25 * dprev and d <= 100.0 * tol * fmax * seglen:
                return val
            dprev = d
        order *= 2
    raise NoConvergence(
        f"segment {seg.start} -> {seg.end} did not converge by order {max_order}",
        last=val, previous=prev,
    )


def integrate_contour(f, contour, tol=1e-10, max_order=2048):
    """Adaptively integrate f along every segment of a contour and sum.

    f must accept a complex ndarray and return complex values elementwise.
    Raises NoConvergence (with the last two estimates attached) if some
    segment refuses to settle by max_order, NonFinite on nan/inf.
    """
    total = 0j
    for seg in contour.segments:
        total += _integrate_segment_adaptive(f, seg, tol, max_order)
    return total
