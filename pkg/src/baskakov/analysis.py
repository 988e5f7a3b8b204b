"""Convergence-order estimation and asymptotic-limit checks.

The limit constants used for second-order residuals are recomputed at
runtime from the exact oracle (Richardson extrapolation over three
decades of n) rather than copied from any closed-form table, so they
stay trustworthy even where transcribed formulas are not.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DomainError, ZeroError
from .exact import central_moment
from .kinds import (BaskakovDurrmeyer, Mod1, Mod2, OperatorKind,
                    TestFunction)
from .operators import apply

__all__ = [
    "ConvergenceReport", "VoronovskajaReport", "sup_error", "fit_order",
    "convergence_report", "voronovskaja_limit_mod1",
    "voronovskaja_limit_mod2_derived", "voronovskaja_residuals",
    "central_moment_scaling", "scaling_exponent",
]


@dataclass(frozen=True)
class ConvergenceReport:
    kind: OperatorKind
    function_id: str
    interval: tuple
    grid_points: int
    n_list: tuple
    sup_errors: tuple
    slope: float
    r_squared: float

    def __post_init__(self):
        if len(self.n_list) < 3:
            raise DomainError("need at least 3 degrees to fit a rate")
        if any(b <= a for a, b in zip(self.n_list, self.n_list[1:])):
            raise DomainError("n_list must be strictly increasing")
        if len(self.sup_errors) != len(self.n_list):
            raise DomainError("sup_errors length must match n_list")
        if not all(math.isfinite(e) for e in self.sup_errors):
            raise DomainError("sup_errors must be finite")


@dataclass(frozen=True)
class VoronovskajaReport:
    x: float
    order: int
    n_list: tuple
    scaled_residuals: tuple
    limit_value: float
    abs_gaps: tuple

    def __post_init__(self):
        if not (len(self.n_list) == len(self.scaled_residuals)
                == len(self.abs_gaps)):
            raise DomainError("report columns must have equal length")
        if not math.isfinite(self.limit_value):
            raise DomainError("limit_value must be finite")


def sup_error(kind: OperatorKind, n: int, f: TestFunction, interval=(0.0, 2.0),
              grid_points: int = 41, tol: float = 1e-10) -> float:
    """Max of |Operator(f; x) - f(x)| over a uniform grid on interval."""
    a, b = float(interval[0]), float(interval[1])
    if grid_points < 2:
        raise DomainError(f"grid_points must be >= 2, got {grid_points}")
    if a < 0 or b <= a:
        raise DomainError(f"interval must satisfy 0 <= a < b, got [{a}, {b}]")
    worst = 0.0
    for x in np.linspace(a, b, grid_points):
        xv = float(x)
        err = abs(apply(kind, n, f, xv, tol) - float(f.eval(xv)))
        if err > worst:
            worst = err
    return worst


def fit_order(n_list, errors):
    """Least-squares slope of ln(error) vs ln(n), with its r^2.

    The slope is the empirical convergence order (negative for a
    converging sequence).
    """
    if len(n_list) < 3 or len(errors) != len(n_list):
        raise DomainError("need matching lists of at least 3 points")
    if any(e <= 0 for e in errors):
        raise ZeroError("sup error hit zero; log-log fit is undefined")
    log_n = np.log(np.asarray(n_list, dtype=float))
    log_e = np.log(np.asarray(errors, dtype=float))
    slope, intercept = np.polyfit(log_n, log_e, 1)
    resid = log_e - (slope * log_n + intercept)
    ss_res = float(np.dot(resid, resid))
    centered = log_e - log_e.mean()
    ss_tot = float(np.dot(centered, centered))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return float(slope), float(r2)


def convergence_report(kind: OperatorKind, f: TestFunction, n_list,
                       interval=(0.0, 2.0), grid_points: int = 41,
                       tol: float = 1e-10) -> ConvergenceReport:
    ns = tuple(int(n) for n in n_list)
    errs = tuple(sup_error(kind, n, f, interval, grid_points, tol)
                 for n in ns)
    slope, r2 = fit_order(ns, errs)
    return ConvergenceReport(kind=kind, function_id=f.id,
                             interval=(float(interval[0]), float(interval[1])),
                             grid_points=grid_points, n_list=ns,
                             sup_errors=errs, slope=slope, r_squared=r2)


def voronovskaja_limit_mod1(l, m, f: TestFunction, x) -> float:
    """First-order limit expression at sequence limits (l, m), verbatim."""
    xv = float(x)
    d1 = float(f.derivative(1)(xv))
    d2 = float(f.derivative(2)(xv))
    return ((1 + 2 * xv) * (3 * l - 2 * m) * d1
            + 0.5 * d2 * (l * (3 + 16 * xv + 16 * xv * xv)
                          + m * (-2 - 10 * xv - 10 * xv * xv)))


@functools.lru_cache(maxsize=256)
def _scaled_central_limit(kind: OperatorKind, x: Fraction, order: int,
                          power: int) -> Fraction:
    """lim n^power * mu_order(n, x) by exact Richardson over n = 1e3..1e5."""
    v0, v1, v2 = (Fraction(n) ** power * central_moment(kind, n, x, order)
                  for n in (1_000, 10_000, 100_000))
    w1 = (10 * v1 - v0) / 9
    w2 = (10 * v2 - v1) / 9
    return (100 * w2 - w1) / 99


def voronovskaja_limit_mod2_derived(f: TestFunction, x) -> float:
    """Second-order limit from oracle moment asymptotics, not from tables.

    L2(x) = C2 f''(x)/2! + C3 f'''(x)/3! + C4 f''''(x)/4! with
    Cj = lim n^2 mu_j(n, x) taken from the exact oracle.
    """
    xv = float(x)
    d2 = float(f.derivative(2)(xv))
    d3 = float(f.derivative(3)(xv))
    d4 = float(f.derivative(4)(xv))
    xf = Fraction(x)
    c2 = float(_scaled_central_limit(Mod2(), xf, 2, 2))
    c3 = float(_scaled_central_limit(Mod2(), xf, 3, 2))
    c4 = float(_scaled_central_limit(Mod2(), xf, 4, 2))
    return c2 * d2 / 2.0 + c3 * d3 / 6.0 + c4 * d4 / 24.0


def voronovskaja_residuals(order: int, kind: OperatorKind, f: TestFunction,
                           x, n_list, tol: float = 1e-10
                           ) -> VoronovskajaReport:
    """Scaled residuals n^order * (Operator(f) - f)(x) against their limit."""
    if order == 1:
        if not isinstance(kind, Mod1):
            raise DomainError(
                "order-1 residuals pair with the first modification")
        l = float(kind.spec.a0.limit())
        m = float(kind.spec.a1.limit())
        limit = voronovskaja_limit_mod1(l, m, f, x)
    elif order == 2:
        if not isinstance(kind, Mod2):
            raise DomainError(
                "order-2 residuals pair with the second modification")
        limit = voronovskaja_limit_mod2_derived(f, x)
    else:
        raise DomainError(f"order must be 1 or 2, got {order}")
    ns = tuple(int(n) for n in n_list)
    if not ns:
        raise DomainError("n_list must be nonempty")
    xv = float(x)
    fx = float(f.eval(xv))
    scaled = tuple(n ** order * (apply(kind, n, f, xv, tol) - fx)
                   for n in ns)
    gaps = tuple(abs(s - limit) for s in scaled)
    return VoronovskajaReport(x=xv, order=order, n_list=ns,
                              scaled_residuals=scaled,
                              limit_value=float(limit), abs_gaps=gaps)


def scaling_exponent(kind: OperatorKind, order: int) -> int:
    """Power p with n^p * mu_order tending to a finite nonzero limit.

    Half the order, rounded up, except that every central moment of the
    second modification gains a factor (order 2 already decays like
    n^-2, and odd orders pick up the same extra power).
    """
    base = -(-order // 2)
    if isinstance(kind, Mod2):
        return max(base, 2)
    return base


def central_moment_scaling(kind: OperatorKind, x, order: int, n_list) -> list:
    """Exact n^p * mu_order(n, x) along n_list, p = scaling_exponent."""
    if isinstance(kind, Mod2):
        hi = 6
    elif isinstance(kind, (Mod1, BaskakovDurrmeyer)):
        hi = 4
    else:
        raise DomainError(f"no central-moment scaling for {kind!r}")
    if not 1 <= order <= hi:
        raise DomainError(f"order must be in 1..{hi} for this kind")
    xf = Fraction(x)
    power = scaling_exponent(kind, order)
    return [Fraction(n) ** power * central_moment(kind, int(n), xf, order)
            for n in n_list]
