"""Shared vocabulary types: rational sequences, operator tags, test functions.

Everything here is immutable and hashable so values can serve as cache
keys and be shared freely across threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, ClassVar, Optional, Union

import numpy as np

from .errors import DomainError, MissingDerivativesError, UnsupportedSequenceError

RatLike = Union[int, Fraction]


def _frac(v: RatLike) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, int) and not isinstance(v, bool):
        return Fraction(v)
    raise DomainError(f"expected an integer or Fraction, got {type(v).__name__}")


@dataclass(frozen=True)
class RationalFn:
    """A rational function of n restricted to (p0 + p1*n) / (q0 + q1*n).

    Coefficients are exact rationals, so evaluation at integer n and the
    n -> infinity limit are both exact.  A constant c is stored as
    p0 = c, p1 = q1 = 0, q0 = 1.
    """

    p0: Fraction
    p1: Fraction
    q0: Fraction
    q1: Fraction

    def __post_init__(self):
        for name in ("p0", "p1", "q0", "q1"):
            object.__setattr__(self, name, _frac(getattr(self, name)))
        if self.q0 == 0 and self.q1 == 0:
            raise DomainError("rational function has an identically zero denominator")

    @classmethod
    def constant(cls, value: RatLike) -> "RationalFn":
        return cls(_frac(value), Fraction(0), Fraction(1), Fraction(0))

    def __call__(self, n: int) -> Fraction:
        den = self.q0 + self.q1 * n
        if den == 0:
            raise UnsupportedSequenceError(
                f"sequence denominator vanishes at n={n}")
        return (self.p0 + self.p1 * n) / den

    @property
    def is_constant(self) -> bool:
        return self.p1 * self.q0 == self.p0 * self.q1

    def limit(self) -> Fraction:
        """Exact limit as n -> infinity; error if the sequence is unbounded."""
        if self.q1 != 0:
            return self.p1 / self.q1
        if self.p1 != 0:
            raise DomainError("sequence is unbounded as n grows; no finite limit")
        return self.p0 / self.q0

    def integer_pole_at_or_above(self, n_min: int) -> Optional[int]:
        """Integer n >= n_min where the denominator vanishes, if any."""
        if self.q1 == 0:
            return None
        root = -self.q0 / self.q1
        if root.denominator == 1 and root >= n_min:
            return int(root)
        return None

    def as_text(self) -> str:
        """Canonical textual form, matching the CLI sequence grammar."""
        if self.is_constant:
            return str(self.p0 / self.q0)
        scale = math.lcm(self.p0.denominator, self.p1.denominator,
                         self.q0.denominator, self.q1.denominator)
        ints = [int(c * scale) for c in (self.p0, self.p1, self.q0, self.q1)]
        g = math.gcd(*ints)
        if g > 1:
            ints = [c // g for c in ints]
        return "ratfn:{},{}/{},{}".format(*ints)


@dataclass(frozen=True)
class SequenceSpec:
    """The coefficient sequences a0(n), a1(n) for the first-order weights.

    A pair is normalized when 2*a0(n) - a1(n) = 1 for every n.  That is
    checked symbolically on cross-multiplied coefficients, not sampled.
    Construction rejects unnormalized pairs unless require_normalized is
    False (used for exploratory classification only).
    """

    a0: RationalFn
    a1: RationalFn
    require_normalized: bool = True

    def __post_init__(self):
        for fn in (self.a0, self.a1):
            pole = fn.integer_pole_at_or_above(4)
            if pole is not None:
                raise DomainError(
                    f"sequence denominator vanishes at integer n={pole}")
        if self.require_normalized and not self.satisfies_constraint:
            raise DomainError(
                "sequences do not satisfy 2*a0(n) - a1(n) = 1; pass "
                "require_normalized=False to build an exploratory pair")

    @classmethod
    def of(cls, a0: RatLike, a1: RatLike, require_normalized: bool = True
           ) -> "SequenceSpec":
        """Build from plain constants."""
        return cls(RationalFn.constant(a0), RationalFn.constant(a1),
                   require_normalized)

    @property
    def satisfies_constraint(self) -> bool:
        """Whether 2*a0(n) - a1(n) = 1 holds identically in n.

        Cross-multiplying gives the quadratic (in n) polynomial
        2*P0*Q1 - P1*Q0 - Q0*Q1 with P, Q the numerator/denominator
        lines of a0 and a1; the pair is normalized iff all three of its
        coefficients vanish.
        """
        a, b = self.a0.p0, self.a0.p1
        c, d = self.a0.q0, self.a0.q1
        e, f = self.a1.p0, self.a1.p1
        g, h = self.a1.q0, self.a1.q1
        c0 = 2 * a * g - e * c - c * g
        c1 = 2 * (a * h + b * g) - (e * d + f * c) - (c * h + d * g)
        c2 = 2 * b * h - f * d - d * h
        return c0 == 0 and c1 == 0 and c2 == 0


# ---------------------------------------------------------------------------
# Operator tags


@dataclass(frozen=True)
class Baskakov:
    name: ClassVar[str] = "baskakov"


@dataclass(frozen=True)
class BaskakovDurrmeyer:
    name: ClassVar[str] = "durrmeyer"


@dataclass(frozen=True)
class Mod1:
    """First-order modified weights, parameterized by a SequenceSpec."""
    spec: SequenceSpec
    name: ClassVar[str] = "mod1"


@dataclass(frozen=True)
class Mod2:
    """Second-order modified weights; the sequences are fixed."""
    name: ClassVar[str] = "mod2"


@dataclass(frozen=True)
class SplitA:
    """First summand of the decomposition V = -A - B."""
    spec: SequenceSpec
    name: ClassVar[str] = "splitA"


@dataclass(frozen=True)
class SplitB:
    """Second summand of the decomposition V = -A - B."""
    spec: SequenceSpec
    name: ClassVar[str] = "splitB"


OperatorKind = Union[Baskakov, BaskakovDurrmeyer, Mod1, Mod2, SplitA, SplitB]

#: Kinds whose point values are weighted sums of integral coefficients.
DURRMEYER_KINDS = (BaskakovDurrmeyer, Mod1, Mod2, SplitA, SplitB)


def is_durrmeyer_type(kind: OperatorKind) -> bool:
    return isinstance(kind, DURRMEYER_KINDS)


def weight_plan(kind: OperatorKind, n: int, x: Fraction
                ) -> tuple[tuple[Fraction, int, int], ...]:
    """Expand a kind's weight row as terms (coefficient, basis degree, shift).

    The weight applied at index k is the sum over terms of
    coefficient * p_{degree, k - shift}(x), with out-of-range shifted
    entries read as zero.  Coefficients are exact rationals.
    """
    x = _frac(x) if isinstance(x, int) else x
    if not isinstance(x, Fraction):
        raise DomainError("weight_plan wants an exact x; convert first")
    if x < 0:
        raise DomainError("x must be nonnegative")
    if isinstance(kind, BaskakovDurrmeyer):
        return ((Fraction(1), n, 0),)
    if isinstance(kind, Mod1):
        a0, a1 = kind.spec.a0(n), kind.spec.a1(n)
        return ((a0 + a1 * x, n + 1, 0),
                (a0 - a1 * (1 + x), n + 1, 1))
    if isinstance(kind, Mod2):
        half3 = Fraction(3, 2)
        nx1x = n * x * (1 + x)
        return ((half3 + 2 * x - nx1x, n + 2, 0),
                (2 * nx1x, n + 2, 1),
                (-Fraction(1, 2) - 2 * x - nx1x, n + 2, 2))
    if isinstance(kind, SplitA):
        a1 = kind.spec.a1(n)
        return ((-a1 * x, n + 1, 0), (a1, n + 1, 1))
    if isinstance(kind, SplitB):
        a0, a1 = kind.spec.a0(n), kind.spec.a1(n)
        return ((-a0, n + 1, 0), (a1 * x - a0, n + 1, 1))
    raise DomainError(f"no weight plan for operator kind {kind!r}")


# ---------------------------------------------------------------------------
# Test functions


@dataclass(frozen=True)
class TestFunction:
    """A registered target function on [0, infinity).

    eval must accept floats and numpy arrays alike.  derivatives holds
    analytic derivatives of orders 1..len(derivatives); poly_coeffs, when
    set, gives exact ascending monomial coefficients and routes the
    function through exact kernels instead of quadrature.  sup_bound is a
    certified bound on |f| used for truncation budgets of bounded f.
    """

    id: str
    eval: Callable
    bounded: bool
    derivatives: tuple = ()
    limit_at_infinity: Optional[float] = None
    poly_coeffs: Optional[tuple] = None
    sup_bound: Optional[float] = None

    @property
    def is_polynomial(self) -> bool:
        return self.poly_coeffs is not None

    def derivative(self, order: int) -> Callable:
        if not 1 <= order <= len(self.derivatives):
            raise MissingDerivativesError(
                f"function {self.id!r} has no registered derivative of "
                f"order {order}")
        return self.derivatives[order - 1]


def _monomial(j: int) -> TestFunction:
    coeffs = tuple(Fraction(1 if i == j else 0) for i in range(j + 1))
    derivs = []
    for order in range(1, 5):
        if order > j:
            derivs.append(lambda t, _o=order: 0.0 * t)
        else:
            c = math.perm(j, order)
            derivs.append(lambda t, _c=c, _p=j - order: _c * t ** _p)
    return TestFunction(
        id=f"t{j}",
        eval=lambda t, _j=j: t ** _j,
        bounded=(j == 0),
        derivatives=tuple(derivs),
        limit_at_infinity=1.0 if j == 0 else None,
        poly_coeffs=coeffs,
        sup_bound=1.0 if j == 0 else None,
    )


FUNCTIONS: dict[str, TestFunction] = {
    "exp_neg": TestFunction(
        id="exp_neg",
        eval=lambda t: np.exp(-t),
        bounded=True,
        derivatives=(
            lambda t: -np.exp(-t),
            lambda t: np.exp(-t),
            lambda t: -np.exp(-t),
            lambda t: np.exp(-t),
        ),
        limit_at_infinity=0.0,
        sup_bound=1.0,
    ),
    "inv1p": TestFunction(
        id="inv1p",
        eval=lambda t: 1.0 / (1.0 + t),
        bounded=True,
        derivatives=(
            lambda t: -(1.0 + t) ** -2.0,
            lambda t: 2.0 * (1.0 + t) ** -3.0,
            lambda t: -6.0 * (1.0 + t) ** -4.0,
            lambda t: 24.0 * (1.0 + t) ** -5.0,
        ),
        limit_at_infinity=0.0,
        sup_bound=1.0,
    ),
    "ratio1p": TestFunction(
        id="ratio1p",
        eval=lambda t: t / (1.0 + t),
        bounded=True,
        derivatives=(
            lambda t: (1.0 + t) ** -2.0,
            lambda t: -2.0 * (1.0 + t) ** -3.0,
            lambda t: 6.0 * (1.0 + t) ** -4.0,
            lambda t: -24.0 * (1.0 + t) ** -5.0,
        ),
        limit_at_infinity=1.0,
        sup_bound=1.0,
    ),
    "exp_sin": TestFunction(
        id="exp_sin",
        eval=lambda t: np.exp(-t) * np.sin(t),
        bounded=True,
        derivatives=(
            lambda t: np.exp(-t) * (np.cos(t) - np.sin(t)),
            lambda t: -2.0 * np.exp(-t) * np.cos(t),
            lambda t: 2.0 * np.exp(-t) * (np.cos(t) + np.sin(t)),
            lambda t: -4.0 * np.exp(-t) * np.sin(t),
        ),
        limit_at_infinity=0.0,
        sup_bound=1.0,
    ),
}

for _j in range(5):
    _m = _monomial(_j)
    FUNCTIONS[_m.id] = _m
del _j, _m
