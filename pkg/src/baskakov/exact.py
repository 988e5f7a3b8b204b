"""Exact big-rational oracle for operator moments.

Everything in this module is driven by one classical fact: the falling
factorial moments of the Baskakov weights have the closed form

    sum_k p_{m,k}(x) * k(k-1)...(k-s+1) = m(m+1)...(m+s-1) * x^s.

Power sums, shifted power sums, the integral moment kernel and full
operator moments are all exact consequences, built here with Fraction
arithmetic and Stirling-number conversion.  No displayed moment formula
from the closed-form tables is used anywhere in this module, so
agreement between the two is evidence for both.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DivergentMomentError, DomainError
from .kinds import Baskakov, OperatorKind, weight_plan

_S_CAP = 8

# Stirling numbers of the second kind, S(s, i) for s, i <= 8, by the
# recurrence S(s, i) = i*S(s-1, i) + S(s-1, i-1).
_S2 = [[0] * (_S_CAP + 1) for _ in range(_S_CAP + 1)]
_S2[0][0] = 1
for _s in range(1, _S_CAP + 1):
    for _i in range(1, _s + 1):
        _S2[_s][_i] = _i * _S2[_s - 1][_i] + _S2[_s - 1][_i - 1]
del _s, _i


def stirling2(s: int, i: int) -> int:
    if not (0 <= s <= _S_CAP and 0 <= i <= _S_CAP):
        raise DomainError(f"stirling2 table covers 0..{_S_CAP}, got ({s}, {i})")
    return _S2[s][i]


def _frac_x(x) -> Fraction:
    if isinstance(x, bool) or not isinstance(x, (int, Fraction)):
        raise DomainError("the oracle wants an exact x (int or Fraction)")
    x = Fraction(x)
    if x < 0:
        raise DomainError("x must be nonnegative")
    return x


def falling_factorial_sum(m: int, s: int, x) -> Fraction:
    """sum_k p_{m,k}(x) * k^(s)  =  m^((s)) * x^s, exactly.

    k^(s) is the falling factorial, m^((s)) the rising one.
    """
    x = _frac_x(x)
    if m < 1:
        raise DomainError(f"basis degree m must be >= 1, got {m}")
    if not 0 <= s <= _S_CAP:
        raise DomainError(f"power s must lie in 0..{_S_CAP}, got {s}")
    rising = 1
    for i in range(s):
        rising *= m + i
    return rising * x ** s


@dataclass(frozen=True)
class PowerSumQuery:
    """Parameters of the shifted power sum  sum_k p_{m,k-r}(x) * k^s."""

    m: int
    r: int
    s: int
    x: Fraction

    def __post_init__(self):
        if self.r not in (0, 1, 2):
            raise DomainError(f"shift r must be 0, 1 or 2, got {self.r}")
        if not 0 <= self.s <= _S_CAP:
            raise DomainError(f"power s must lie in 0..{_S_CAP}, got {self.s}")
        object.__setattr__(self, "x", _frac_x(self.x))


def power_sum(q: PowerSumQuery) -> Fraction:
    """Evaluate the shifted power sum exactly.

    Reindexing j = k - r turns the sum into sum_j p_{m,j}(x) (j+r)^s;
    the binomial expansion of (j+r)^s and Stirling conversion of j^a to
    falling factorials reduce everything to falling_factorial_sum.
    """
    return _power_sum(q.m, q.r, q.s, q.x)


def _power_sum(m: int, r: int, s: int, x: Fraction) -> Fraction:
    total = Fraction(0)
    for a in range(s + 1):
        shift_part = math.comb(s, a) * r ** (s - a)
        if shift_part == 0:
            continue
        inner = Fraction(0)
        for i in range(a + 1):
            coef = stirling2(a, i)
            if coef:
                inner += coef * falling_factorial_sum(m, i, x)
        total += shift_part * inner
    return total


def moment_kernel(n: int, k: int, j: int) -> Fraction:
    """(n-1) * integral of p_{n,k}(t) t^j dt, in closed form.

    Equals prod_{i=1..j}(k+i) / prod_{i=2..j+1}(n-i); diverges unless
    n > j + 1.
    """
    if k < 0:
        raise DomainError(f"index k must be nonnegative, got {k}")
    if j < 0:
        raise DomainError(f"moment degree j must be nonnegative, got {j}")
    if n <= j + 1:
        raise DivergentMomentError(
            f"moment of degree {j} diverges at n={n} (needs n > {j + 1})")
    num = 1
    for i in range(1, j + 1):
        num *= k + i
    den = 1
    for i in range(2, j + 2):
        den *= n - i
    return Fraction(num, den)


_KERNEL_POLY: dict[int, tuple] = {}


def kernel_poly(j: int) -> tuple:
    """Coefficients (ascending in k) of prod_{i=1..j}(k+i) as ints."""
    if j < 0:
        raise DomainError("degree must be nonnegative")
    cached = _KERNEL_POLY.get(j)
    if cached is None:
        coeffs = [1]
        for i in range(1, j + 1):
            nxt = [0] * (len(coeffs) + 1)
            for a, c in enumerate(coeffs):
                nxt[a] += c * i
                nxt[a + 1] += c
            coeffs = nxt
        cached = tuple(coeffs)
        _KERNEL_POLY[j] = cached
    return cached


_MAX_DEGREE = 6


def exact_moment(kind: OperatorKind, n: int, x, j: int) -> Fraction:
    """Operator(t^j; x) as an exact rational.

    The kernel numerator prod(k+i) is expanded as a polynomial in k and
    contracted against shifted power sums, one weight term at a time.
    """
    x = _frac_x(x)
    if isinstance(kind, Baskakov):
        raise DomainError(
            "exact_moment covers the integral kinds; use baskakov_moment")
    if not 0 <= j <= _MAX_DEGREE:
        raise DomainError(f"moment degree must lie in 0..{_MAX_DEGREE}, got {j}")
    if n <= j + 1:
        raise DivergentMomentError(
            f"moment of degree {j} diverges at n={n} (needs n > {j + 1})")
    poly = kernel_poly(j)
    den = 1
    for i in range(2, j + 2):
        den *= n - i
    total = Fraction(0)
    for coef, m, r in weight_plan(kind, n, x):
        if coef == 0:
            continue
        contracted = Fraction(0)
        for a, c in enumerate(poly):
            if c:
                contracted += c * _power_sum(m, r, a, x)
        total += coef * contracted
    return total / den


def central_moment(kind: OperatorKind, n: int, x, order: int) -> Fraction:
    """Operator((t-x)^order; x) by exact binomial expansion of raw moments."""
    x = _frac_x(x)
    if not 0 <= order <= _MAX_DEGREE:
        raise DomainError(
            f"central order must lie in 0..{_MAX_DEGREE}, got {order}")
    total = Fraction(0)
    for i in range(order + 1):
        total += (math.comb(order, i) * (-x) ** (order - i)
                  * exact_moment(kind, n, x, i))
    return total


def baskakov_moment(n: int, x, j: int) -> Fraction:
    """Point-sampling operator moment  sum_k p_{n,k}(x) (k/n)^j, exactly."""
    x = _frac_x(x)
    if n < 1:
        raise DomainError(f"degree n must be >= 1, got {n}")
    if not 0 <= j <= _S_CAP:
        raise DomainError(f"moment degree must lie in 0..{_S_CAP}, got {j}")
    return _power_sum(n, 0, j, x) / Fraction(n) ** j
