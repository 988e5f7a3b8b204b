"""Point evaluation of all the operators on registered functions.

A Durrmeyer-type value is a weighted sum over k of integral
coefficients I_{n,k}(f).  The x-dependence lives entirely in the
weights, so the expensive integrals are cached per (n, f, tolerance)
and reused across grid sweeps and across operator kinds that share the
same n.  Polynomial inputs never touch quadrature; they go through the
exact moment kernel.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction

from .basis import basis_row, eval_basis
from .errors import (DivergentMomentError, DomainError, NonConvergenceError,
                     UnboundedFunctionError)
from .exact import baskakov_moment, moment_kernel
from .kinds import (Baskakov, BaskakovDurrmeyer, Mod1, Mod2, OperatorKind,
                    SequenceSpec, SplitA, SplitB, TestFunction,
                    is_durrmeyer_type, weight_plan)

__all__ = [
    "Baskakov", "BaskakovDurrmeyer", "Mod1", "Mod2", "SplitA", "SplitB",
    "OperatorKind", "SequenceSpec", "TestFunction",
    "mod1_weight", "mod2_weight", "split_weights", "apply",
    "empirical_positivity",
]


def mod1_weight(spec: SequenceSpec, n: int, k: int, x: float) -> float:
    """First-order weight a(x,n) p_{n+1,k}(x) + b(x,n) p_{n+1,k-1}(x)."""
    if n < 1:
        raise DomainError(f"degree n must be >= 1, got {n}")
    a0 = float(spec.a0(n))
    a1 = float(spec.a1(n))
    w = (a0 + a1 * x) * eval_basis(n + 1, k, x)
    if k >= 1:
        w += (a0 - a1 * (1.0 + x)) * eval_basis(n + 1, k - 1, x)
    return w


def mod2_weight(n: int, k: int, x: float) -> float:
    """Second-order weight; three shifted-basis terms with fixed sequences.

    The coefficients grow like n and cancel against each other, so the
    three products are combined with compensated summation.
    """
    if n < 3:
        raise DomainError(f"degree n must be >= 3, got {n}")
    nx1x = n * x * (1.0 + x)
    terms = [(1.5 + 2.0 * x - nx1x) * eval_basis(n + 2, k, x)]
    if k >= 1:
        terms.append(2.0 * nx1x * eval_basis(n + 2, k - 1, x))
    if k >= 2:
        terms.append((-0.5 - 2.0 * x - nx1x) * eval_basis(n + 2, k - 2, x))
    return math.fsum(terms)


def split_weights(spec: SequenceSpec, n: int, k: int, x: float):
    """Weights (wA, wB) of the two decomposition operators.

    By construction of a(x,n) and b(x,n), -wA - wB equals mod1_weight
    identically.
    """
    if n < 1:
        raise DomainError(f"degree n must be >= 1, got {n}")
    a0 = float(spec.a0(n))
    a1 = float(spec.a1(n))
    pk = eval_basis(n + 1, k, x)
    pk1 = eval_basis(n + 1, k - 1, x) if k >= 1 else 0.0
    w_a = -a1 * x * pk + a1 * pk1
    w_b = -a0 * pk + (a1 * x - a0) * pk1
    return w_a, w_b


# ---------------------------------------------------------------------------
# Integral coefficient cache

_CACHE: dict = {}
_CACHE_LOCK = threading.Lock()


def _quad_config(tol: float):
    from .quad import QuadConfig
    return QuadConfig(abs_tol=max(1e-300, tol * 1e-4),
                      rel_tol=max(1e-300, min(1e-12, tol * 1e-2)),
                      max_depth=40)


def _coefficients(n: int, f: TestFunction, k_hi: int, tol: float) -> list:
    """I_{n,0..k_hi}(f), extending and reusing the shared cache."""
    from .quad import durrmeyer_coefficient
    cfg = _quad_config(tol)
    key = (n, f.id, cfg.abs_tol)
    with _CACHE_LOCK:
        cached = _CACHE.setdefault(key, [])
        while len(cached) <= k_hi:
            k = len(cached)
            res = durrmeyer_coefficient(n, k, f, cfg)
            if not res.converged:
                raise NonConvergenceError(
                    f"integral coefficient (n={n}, k={k}, f={f.id}) stopped "
                    f"at error {res.error_estimate:.3e} above tolerance",
                    estimate=res.value, error_bound=res.error_estimate)
            cached.append(res.value)
    return cached


def _clear_coefficient_cache() -> None:
    with _CACHE_LOCK:
        _CACHE.clear()


# ---------------------------------------------------------------------------
# Truncation for polynomial integrands

def _weighted_row(m: int, x: float, tol: float, phi, d: int) -> list:
    """Row p_{m,0..J}(x) with certified tail  sum_{j>J} p_{m,j} phi(j+2) <= tol.

    phi must be nondecreasing with phi(k+1)/phi(k) <= (k+1+d)/(k+1),
    which holds for absolute-coefficient kernel bounds of degree d.
    """
    if x == 0.0:
        return [1.0]
    s = x / (1.0 + x)
    q = 0.5 * (1.0 + s)
    j_floor = math.ceil(m * x)

    if m * math.log1p(x) <= 700.0:
        values = [(1.0 + x) ** (-m)]
        j = 0
    else:
        j0 = max(j_floor, 1)
        pj0 = eval_basis(m, j0, x)
        down = []
        p, j = pj0, j0
        while j > 0 and p > 0.0:
            p *= j / ((m + j - 1) * s)
            j -= 1
            down.append(p)
        values = [0.0] * j + down[::-1] + [pj0]
        j = j0

    p = values[-1]
    while True:
        rho = (m + j) / (j + 1) * s
        psi = (j + 3 + d) / (j + 3)
        if (rho * psi <= q and j >= j_floor
                and p * rho * phi(j + 3) / (1.0 - q) <= tol):
            return values
        if j > 50_000_000:
            raise DomainError("weighted row exceeds the sanity cap")
        p *= rho
        j += 1
        values.append(p)


# ---------------------------------------------------------------------------
# Operator application

def _apply_baskakov(n: int, f: TestFunction, x: float, tol: float) -> float:
    if n < 1:
        raise DomainError(f"degree n must be >= 1, got {n}")
    if f.is_polynomial:
        xf = Fraction(x)
        total = Fraction(0)
        for j, c in enumerate(f.poly_coeffs):
            if c:
                total += c * baskakov_moment(n, xf, j)
        return float(total)
    if not f.bounded:
        raise UnboundedFunctionError(
            f"function {f.id!r} is unbounded and not polynomial")
    sup = f.sup_bound if f.sup_bound is not None else 1.0
    row = basis_row(n, x, min(0.5, tol / (2.0 * sup)))
    return math.fsum(p * float(f.eval(float(Fraction(k, n))))
                     for k, p in enumerate(row.values))


def apply(kind: OperatorKind, n: int, f: TestFunction, x: float,
          tol: float = 1e-10) -> float:
    """Evaluate Operator(f; x) to within tol (truncation plus quadrature).

    Point sampling for the Baskakov kind, weighted integral coefficients
    for the rest.  Polynomials are contracted against the exact moment
    kernel instead of being integrated numerically.
    """
    if x < 0 or not math.isfinite(x):
        raise DomainError(f"x must be nonnegative and finite, got {x}")
    if tol <= 0:
        raise DomainError("tol must be positive")
    if isinstance(kind, Baskakov):
        return _apply_baskakov(n, f, x, tol)
    if not is_durrmeyer_type(kind):
        raise DomainError(f"unknown operator kind {kind!r}")
    if n < 3:
        raise DomainError(f"integral kinds need n >= 3, got {n}")

    plan = weight_plan(kind, n, Fraction(x))
    coefs = [(float(c), r) for c, _, r in plan]
    m = plan[0][1]
    r_max = max(r for _, r in coefs)
    c_sum = max(1.0, sum(abs(c) for c, _ in coefs))

    if f.is_polynomial:
        degree = len(f.poly_coeffs) - 1
        if n <= degree + 1:
            raise DivergentMomentError(
                f"degree-{degree} input diverges at n={n} "
                f"(needs n > {degree + 1})")
        c_flt = [float(c) for c in f.poly_coeffs]
        c_abs = [abs(c) for c in c_flt]

        def phi(k: int) -> float:
            return sum(c * float(moment_kernel(n, k, j))
                       for j, c in enumerate(c_abs) if c)

        row = _weighted_row(m, x, tol / (2.0 * c_sum), phi, degree)

        def coefficient(k: int) -> float:
            return sum(c * float(moment_kernel(n, k, j))
                       for j, c in enumerate(c_flt) if c)

        i_vals = [coefficient(k) for k in range(len(row) + r_max)]
    else:
        if not f.bounded:
            raise UnboundedFunctionError(
                f"function {f.id!r} is unbounded and not polynomial")
        sup = f.sup_bound if f.sup_bound is not None else 1.0
        row = list(basis_row(m, x, min(0.5, tol / (2.0 * c_sum * sup))).values)
        i_vals = _coefficients(n, f, len(row) - 1 + r_max, tol)

    terms = []
    for k in range(len(row) + r_max):
        w = 0.0
        for c, r in coefs:
            idx = k - r
            if 0 <= idx < len(row):
                w += c * row[idx]
        terms.append(w * i_vals[k])
    return math.fsum(terms)


def empirical_positivity(spec: SequenceSpec, n: int, x_grid, k_max: int):
    """Minimum first-order weight over a grid, with its location.

    Returns (min_weight, (argmin_k, argmin_x)).  Ties keep the first
    location in scan order (ascending x, then ascending k).
    """
    xs = list(x_grid)
    if not xs:
        raise DomainError("x_grid must be nonempty")
    if k_max < 0:
        raise DomainError("k_max must be nonnegative")
    best = math.inf
    arg = (0, xs[0])
    for x in xs:
        for k in range(k_max + 1):
            w = mod1_weight(spec, n, k, x)
            if w < best:
                best = w
                arg = (k, x)
    return best, arg
