"""Adaptive quadrature for the integral coefficients of the operators.

The semi-infinite integral (n-1) * int_0^inf p_{n,k}(t) f(t) dt is
mapped onto [0, 1] by u = t/(1+t), where the weight becomes the
polynomial-type density u^k (1-u)^(n-2).  Panels are integrated with
the embedded 7/15-point Gauss-Kronrod pair; the panel with the worst
error estimate is bisected until the summed estimate meets the
tolerance.  Heap order is made total by the panel endpoints, and leaves
are accumulated in spatial order, so results are fully deterministic.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .kinds import TestFunction

# 15-point Kronrod nodes on [-1, 1] (positive half, descending) and the
# matching Kronrod weights; the embedded 7-point Gauss rule sits on the
# odd-indexed nodes.  Full-precision values: with the weights rounded to
# 15 digits the K and G weight sums disagree by ~4e-14, which puts a
# floor under |K15 - G7| on smooth panels and stalls the refinement.
_H = (0.991455371120812639206854697526329,
      0.949107912342758524526189684047851,
      0.864864423359769072789712788640926,
      0.741531185599394439863864773280788,
      0.586087235467691130294144838258730,
      0.405845151377397166906606412076961,
      0.207784955007898467600689403773245, 0.0)
_WK = (0.022935322010529224963732008058970,
       0.063092092629978553290700663189204,
       0.104790010322250183839998060075170,
       0.140653259715525918745189590510238,
       0.169004726639267902826583426598550,
       0.190350578064785409913256402421014,
       0.204432940075298892414161999234649,
       0.209482141084727828012999174891714)
_WG = (0.129484966168869693270611432679082,
       0.279705391489276667901467771423780,
       0.381830050505118944950369775488975,
       0.417959183673469387755102040816327)

_NODES = np.array([-h for h in _H[:-1]] + list(_H[::-1]))
_WEIGHTS_K = np.array(list(_WK[:-1]) + list(_WK[::-1]))
_WEIGHTS_G = np.zeros(15)
_WEIGHTS_G[[1, 3, 5, 7, 9, 11, 13]] = (_WG[0], _WG[1], _WG[2], _WG[3],
                                       _WG[2], _WG[1], _WG[0])

#: Global cap on panels per integral, bounding worst-case work.
_MAX_PANELS = 2048


@dataclass(frozen=True)
class QuadConfig:
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_depth: int = 40

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("tolerances must be positive")
        if self.max_depth < 1:
            raise DomainError("max_depth must be >= 1")


@dataclass(frozen=True)
class QuadResult:
    value: float
    error_estimate: float
    panels: int
    converged: bool


def _panel(g, a: float, b: float):
    half = 0.5 * (b - a)
    u = 0.5 * (a + b) + half * _NODES
    fu = np.asarray(g(u), dtype=float)
    k15 = half * float(_WEIGHTS_K @ fu)
    g7 = half * float(_WEIGHTS_G @ fu)
    return k15, abs(k15 - g7)


def integrate_unit_interval(g, cfg: QuadConfig = None,
                            split_points=()) -> QuadResult:
    """Adaptive bisection quadrature of int_0^1 g(u) du.

    g must accept a numpy array of interior points and return values of
    the same shape.  The panel with the largest error estimate is split
    until the summed estimate meets the tolerance or a work cap is hit;
    the final value is accumulated over the leaves in spatial order with
    compensated summation.

    split_points seeds the initial panel boundaries.  A feature much
    narrower than a panel can fall between its sample nodes and be
    missed entirely; a caller that knows where its integrand is
    concentrated should bracket that region here.
    """
    if cfg is None:
        cfg = QuadConfig()
    edges = [0.0]
    for p in sorted(set(float(p) for p in split_points)):
        if not 0.0 < p < 1.0:
            raise DomainError(f"split point {p} must lie inside (0, 1)")
        if p > edges[-1]:
            edges.append(p)
    edges.append(1.0)
    heap = []
    total_v, total_e, panels = 0.0, 0.0, 0
    for a, b in zip(edges, edges[1:]):
        v, e = _panel(g, a, b)
        heap.append((-e, a, b, v, e, 0))
        total_v += v
        total_e += e
        panels += 1
    heapq.heapify(heap)
    while (total_e > max(cfg.abs_tol, cfg.rel_tol * abs(total_v))
           and panels < _MAX_PANELS):
        item = heapq.heappop(heap)
        _, a, b, v, e, depth = item
        if depth >= cfg.max_depth:
            heapq.heappush(heap, item)
            break
        mid = 0.5 * (a + b)
        vl, el = _panel(g, a, mid)
        vr, er = _panel(g, mid, b)
        panels += 2
        total_v += vl + vr - v
        total_e += el + er - e
        heapq.heappush(heap, (-el, a, mid, vl, el, depth + 1))
        heapq.heappush(heap, (-er, mid, b, vr, er, depth + 1))
    leaves = sorted((a, v, e) for _, a, _b, v, e, _d in heap)
    value = math.fsum(v for _, v, _e in leaves)
    err = math.fsum(e for _, _v, e in leaves)
    return QuadResult(
        value=value,
        error_estimate=err,
        panels=panels,
        converged=err <= max(cfg.abs_tol, cfg.rel_tol * abs(value)),
    )


def durrmeyer_coefficient(n: int, k: int, f: TestFunction,
                          cfg: QuadConfig = None) -> QuadResult:
    """(n-1) * int_0^inf p_{n,k}(t) f(t) dt via the u = t/(1+t) map.

    The transformed integrand, including the (n-1) factor, is assembled
    in log space so the binomial coefficient never overflows.  Nodes are
    strictly interior, so neither endpoint of [0, 1] is ever evaluated.
    """
    if n < 3:
        raise DomainError(f"integral coefficients need n >= 3, got {n}")
    if k < 0:
        raise DomainError(f"index k must be nonnegative, got {k}")
    log_c = (math.log(n - 1) + math.lgamma(n + k) - math.lgamma(k + 1)
             - math.lgamma(n))
    fe = f.eval

    def g(u):
        logw = log_c + (n - 2) * np.log1p(-u)
        if k:
            logw = logw + k * np.log(u)
        return np.exp(logw) * fe(u / (1.0 - u))

    # The density u^k (1-u)^(n-2) peaks at k/(n+k-2) with width on the
    # order of 1/sqrt(n+k); bracket that peak so it cannot slip between
    # the sample nodes of a wide panel.  The ladder runs farther on the
    # right because the density is skewed toward large u, with tail mass
    # well above the matching normal tail out to roughly twelve widths.
    splits = ()
    if k >= 1:
        mode = k / (n + k - 2)
        sigma = math.sqrt(mode * (1.0 - mode) / (n + k))
        splits = tuple(p for p in (mode - 8.0 * sigma, mode - 4.0 * sigma,
                                   mode, mode + 4.0 * sigma,
                                   mode + 8.0 * sigma, mode + 12.0 * sigma)
                       if 0.0 < p < 1.0)
    return integrate_unit_interval(g, cfg, split_points=splits)
