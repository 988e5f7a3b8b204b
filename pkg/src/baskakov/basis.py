"""Numerically stable evaluation of the Baskakov basis p_{n,k}(x).

p_{n,k}(x) = C(n+k-1, k) * x^k / (1+x)^(n+k), the negative-binomial
mass at k with success parameter x/(1+x).  Isolated values go through
log-gamma; rows use the ratio recurrence with a certified geometric
tail bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

#: Hard cap on row length, purely a sanity guard against absurd inputs.
_MAX_ROW = 50_000_000


def _check_nx(n: int, x: float) -> None:
    if n < 1:
        raise DomainError(f"basis degree n must be >= 1, got {n}")
    if x < 0:
        raise DomainError(f"x must be nonnegative, got {x}")
    if not math.isfinite(x):
        raise DomainError("x must be finite")


def eval_basis(n: int, k: int, x: float) -> float:
    """Single basis value via log-gamma, safe for large n + k."""
    _check_nx(n, x)
    if k < 0:
        raise DomainError(f"index k must be nonnegative, got {k}")
    if x == 0.0:
        return 1.0 if k == 0 else 0.0
    logv = -(n + k) * math.log1p(x)
    if k > 0:
        logv += (math.lgamma(n + k) - math.lgamma(k + 1) - math.lgamma(n)
                 + k * math.log(x))
    return math.exp(logv)


@dataclass(frozen=True)
class BasisRow:
    """Truncated basis vector with a certified bound on the dropped tail."""

    n: int
    x: float
    values: tuple
    tail_bound: float

    @property
    def K(self) -> int:
        return len(self.values) - 1


def _tail_state(n: int, x: float):
    """Per-row constants: success ratio s and certified tail ratio q."""
    s = x / (1.0 + x)
    q = 0.5 * (1.0 + s)
    return s, q


def truncation_index(n: int, x: float, tol: float) -> int:
    """Smallest K the certified walk accepts for a tail bound <= tol.

    Advances until the step ratio rho_k = ((n+k)/(k+1)) * x/(1+x) has
    dropped below q = (1 + x/(1+x))/2, then further until the geometric
    bound p_K * q/(1-q) clears tol.  K is also forced past the mode
    ceil(n*x) so the row always covers the bulk of the mass.
    """
    _check_nx(n, x)
    if x == 0.0:
        return 0
    if not 0.0 < tol < 1.0:
        raise DomainError("tol must lie in (0, 1)")
    s, q = _tail_state(n, x)
    tail_factor = q / (1.0 - q)
    k_floor = math.ceil(n * x)
    k = 0
    p = eval_basis(n, 0, x)
    if p == 0.0:
        # (1+x)^(-n) underflowed; restart the walk at the mode instead.
        k = max(k_floor, 1)
        p = eval_basis(n, k, x)
    while True:
        rho = (n + k) / (k + 1) * s
        if rho <= q and k >= k_floor and p * tail_factor <= tol:
            return k
        if k >= _MAX_ROW:
            raise DomainError("truncation index exceeds the sanity cap")
        p *= rho
        k += 1


def basis_row(n: int, x: float, tol: float) -> BasisRow:
    """Row values p_{n,0..K}(x) by the ratio recurrence, tail bound <= tol.

    Seeded at p_{n,0} = (1+x)^(-n); when that seed underflows (huge
    n*log(1+x)) the row is instead seeded at the mode via log-gamma and
    filled downward, which keeps every representable entry accurate.
    """
    _check_nx(n, x)
    if x == 0.0:
        return BasisRow(n=n, x=x, values=(1.0,), tail_bound=0.0)
    if not 0.0 < tol < 1.0:
        raise DomainError("tol must lie in (0, 1)")
    s, q = _tail_state(n, x)
    tail_factor = q / (1.0 - q)
    k_floor = math.ceil(n * x)

    if n * math.log1p(x) <= 700.0:
        values = [(1.0 + x) ** (-n)]
        k = 0
    else:
        k0 = max(k_floor, 1)
        pk0 = eval_basis(n, k0, x)
        down = []
        p, k = pk0, k0
        while k > 0 and p > 0.0:
            p *= k / ((n + k - 1) * s)
            k -= 1
            down.append(p)
        values = [0.0] * k + down[::-1] + [pk0]
        k = k0

    p = values[-1]
    while True:
        rho = (n + k) / (k + 1) * s
        if rho <= q and k >= k_floor and p * tail_factor <= tol:
            return BasisRow(n=n, x=x, values=tuple(values),
                            tail_bound=p * tail_factor)
        if k >= _MAX_ROW:
            raise DomainError("basis row exceeds the sanity cap")
        p *= rho
        k += 1
        values.append(p)
