"""Closed-form moment expressions and comparison reports.

Functions carrying a `_paper` suffix evaluate fixed reference formulas
verbatim, in exact arithmetic, with one table entry per displayed
monomial.  They are comparison subjects, not infrastructure: the oracle
in exact.py is ground truth, and any disagreement is surfaced through
MomentComparison records rather than patched here.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .exact import central_moment, exact_moment
from .kinds import Mod1, Mod2, OperatorKind, SequenceSpec, SplitA, SplitB

__all__ = [
    "MomentComparison", "PositivityCase", "CASE_EXEMPLARS",
    "mod1_moment_paper", "mod1_central_paper", "corollary_limits",
    "mod2_moment_paper", "mod2_central_paper", "split_moments_paper",
    "power_sum_paper", "shifted_power_sum_paper", "classify_case",
    "compare_mod1_moments", "compare_mod1_centrals",
    "compare_mod2_moments", "compare_mod2_centrals",
    "compare_split_moments",
]


def _rat(x) -> Fraction:
    if isinstance(x, (float, bool)):
        raise DomainError("x must be exact (int or Fraction), not float")
    x = Fraction(x)
    if x < 0:
        raise DomainError(f"x must be nonnegative, got {x}")
    return x


def _poly(x: Fraction, coeffs) -> Fraction:
    """Ascending-power polynomial in x with integer coefficients."""
    total = Fraction(0)
    for c in reversed(coeffs):
        total = total * x + c
    return total


def _npoly(n: int, coeffs) -> int:
    total = 0
    for c in reversed(coeffs):
        total = total * n + c
    return total


def _denom(n: int, count: int) -> int:
    """(n-2)(n-3)...(n-count-1), the shared denominator chain."""
    d = 1
    for i in range(2, count + 2):
        d *= n - i
    return d


# ---------------------------------------------------------------------------
# First-order modification, raw moments t^j

# Bracketed numerator terms, grouped by power of n; each entry is a pair
# of ascending x-polynomials multiplying a0(n) and a1(n).
_MOD1_BRACKETS = {
    2: (((8, 10, -8), (-6, -10, 2)),
        ((0, 10, 16), (0, -6, -10))),
    3: (((30, 54, 42, 60), (-24, -54, -42, -36)),
        ((0, 54, 63, -30), (0, -36, -54, 6)),
        ((0, 0, 21, 30), (0, 0, -12, -18))),
    4: (((144, 336, 382, 216, -192), (-120, -336, -382, -214, 72)),
        ((0, 336, 573, 396, 408), (0, -240, -501, -361, -248)),
        ((0, 0, 191, 216, -72), (0, 0, -119, -167, 12)),
        ((0, 0, 0, 36, 48), (0, 0, 0, -20, -28))),
}


def mod1_moment_paper(spec: SequenceSpec, n: int, x, j: int) -> Fraction:
    """Reference formula for the first-order moment of degree j (0..4)."""
    if not 0 <= j <= 4:
        raise DomainError(f"degree must be in 0..4, got {j}")
    if n < 6:
        raise DomainError(f"formula needs n >= 6, got {n}")
    x = _rat(x)
    a0 = spec.a0(n)
    a1 = spec.a1(n)
    lead = 2 * a0 - a1
    if j == 0:
        return lead
    if j == 1:
        return lead * x + (1 + 2 * x) * (3 * a0 - 2 * a1) / Fraction(n - 2)
    num = Fraction(0)
    for p, (c_a0, c_a1) in enumerate(_MOD1_BRACKETS[j]):
        num += n ** p * (a0 * _poly(x, c_a0) + a1 * _poly(x, c_a1))
    return lead * x ** j + num / _denom(n, j)


# ---------------------------------------------------------------------------
# First-order modification, central moments

_MOD1_CENTRAL_BRACKETS = {
    2: (((-1, -8, -8), (0, 2, 2)),
        ((3, 16, 16), (-2, -10, -10))),
    4: (((144, 936, 2422, 2976, 1488), (-120, -816, -2182, -2734, -1368)),
        ((0, 216, 1005, 1584, 792), (0, -144, -681, -1077, -540)),
        ((0, 0, 23, 48, 24), (0, 0, -11, -23, -12))),
}


def mod1_central_paper(spec: SequenceSpec, n: int, x, order: int) -> Fraction:
    """Reference central-moment formula, orders 1, 2 and 4 only.

    Order 3 has no stated closed form and is served by the oracle alone.
    """
    if order not in (1, 2, 4):
        raise DomainError(
            f"order must be 1, 2 or 4 (3 is oracle-only), got {order}")
    if n < 6:
        raise DomainError(f"formula needs n >= 6, got {n}")
    x = _rat(x)
    a0 = spec.a0(n)
    a1 = spec.a1(n)
    if order == 1:
        return (1 + 2 * x) * (3 * a0 - 2 * a1) / Fraction(n - 2)
    num = Fraction(0)
    for p, (c_a0, c_a1) in enumerate(_MOD1_CENTRAL_BRACKETS[order]):
        num += n ** p * (a0 * _poly(x, c_a0) + a1 * _poly(x, c_a1))
    return num / _denom(n, order)


def corollary_limits(l, m, x):
    """Stated limits of n*(central moments) for constant sequences (l, m).

    Returns (lim1, lim2, lim4).  Duck-typed: exact inputs give exact
    outputs, floats give floats.
    """
    lim1 = (1 + 2 * x) * (3 * l - 2 * m)
    lim2 = l * (3 + 16 * x + 16 * x * x) - m * (2 + 10 * x + 10 * x * x)
    lim4 = (l * (23 + 48 * x + 24 * x * x)
            - m * (11 + 23 * x + 12 * x * x)) * x * x
    return lim1, lim2, lim4


# ---------------------------------------------------------------------------
# Second-order modification

# Numerators grouped by ascending power of x; each entry is an ascending
# polynomial in n.  Denominator is the chain (n-2)...(n-j-1).
_MOD2_MOMENTS = {
    3: ((-21,),
        (-114, -21),
        (-132, -84),
        (-48, -46, -9, 1)),
    4: ((-144,),
        (-864, -240),
        (-1428, -1014, -78),
        (-1008, -1032, -264),
        (-264, -334, -133, -14, 1)),
    5: ((-1080,),
        (-7200, -2400),
        (-15300, -11550, -1350),
        (-15840, -16860, -4890, -210),
        (-8160, -10640, -4560, -640),
        (-1680, -2516, -1360, -305, -20, 1)),
    6: ((-9000,),
        (-66240, -24480),
        (-171000, -134100, -18900),
        (-231840, -252960, -78840, -5160),
        (-176760, -235050, -105375, -16950, -465),
        (-72000, -109680, -61320, -14880, -1320),
        (-12240, -20628, -13436, -4185, -605, -27, 1)),
}

_MOD2_CENTRALS = {
    2: ((-3,), (-16,), (-16,)),
    3: ((-21,),
        (-150, -12),
        (-324, -36),
        (-216, -24)),
    4: ((-144,),
        (-1284, -156),
        (-4068, -816, -12),
        (-5568, -1320, -24),
        (-2784, -660, -12)),
    5: ((-1080,),
        (-11520, -1680),
        (-47520, -12120, -360),
        (-96480, -31680, -1440),
        (-97200, -35400, -1800),
        (-38880, -14160, -720)),
    6: ((-9000,),
        (-111600, -18000),
        (-564120, -163620, -6660),
        (-1506960, -584040, -39960, -240),
        (-2258280, -1024020, -86580, -720),
        (-1805760, -878400, -79920, -720),
        (-601920, -292800, -26640, -240)),
}


def mod2_moment_paper(n: int, x, j: int) -> Fraction:
    """Reference formula for the second-order moment of degree j (0..6)."""
    if not 0 <= j <= 6:
        raise DomainError(f"degree must be in 0..6, got {j}")
    if n < 8:
        raise DomainError(f"formula needs n >= 8, got {n}")
    x = _rat(x)
    if j == 0:
        return Fraction(1)
    if j == 1:
        return x
    if j == 2:
        return x * x + _poly(x, (-3, -16, -16)) / Fraction(_denom(n, 2))
    num = Fraction(0)
    for i, coeffs in enumerate(_MOD2_MOMENTS[j]):
        num += x ** i * _npoly(n, coeffs)
    return num / _denom(n, j)


def mod2_central_paper(n: int, x, order: int) -> Fraction:
    """Reference central-moment formula for the second order, 1..6.

    The order-6 denominator chain runs (n-2) through (n-7); a smudged
    factor in the source display is read as (n-5), the only value that
    completes the chain.
    """
    if not 1 <= order <= 6:
        raise DomainError(f"order must be in 1..6, got {order}")
    if n < 8:
        raise DomainError(f"formula needs n >= 8, got {n}")
    x = _rat(x)
    if order == 1:
        return Fraction(0)
    num = Fraction(0)
    for i, coeffs in enumerate(_MOD2_CENTRALS[order]):
        num += x ** i * _npoly(n, coeffs)
    return num / _denom(n, order)


# ---------------------------------------------------------------------------
# Decomposition operators

def split_moments_paper(spec: SequenceSpec, n: int, x, j: int,
                        which: str) -> Fraction:
    """The six displayed moment formulas for the decomposition pair.

    which is "A" or "B"; j runs 0..2.  Transcribed verbatim, including
    the quadratic term of A that carries an extra sequence factor.
    """
    if j not in (0, 1, 2):
        raise DomainError(f"degree must be in 0..2, got {j}")
    if which not in ("A", "B"):
        raise DomainError(f"which must be 'A' or 'B', got {which!r}")
    if n < 4:
        raise DomainError(f"formula needs n >= 4, got {n}")
    x = _rat(x)
    a0 = spec.a0(n)
    a1 = spec.a1(n)
    d1 = Fraction(n - 2)
    d2 = Fraction((n - 2) * (n - 3))
    if which == "A":
        lead = a1 * (1 - x)
        if j == 0:
            return lead
        if j == 1:
            return lead * (x + (3 * x + 1) / d1) + a1 / d1
        return lead * (x * x
                       + (8 * n * x * x - 4 * x * x + 4 * (n + 1) * x) / d2
                       + (2 * a1 * n + 6 * a1) / d2)
    lead = a1 * x - 2 * a0
    if j == 0:
        return lead
    if j == 1:
        return lead * (x + 3 * x / d1) + (2 * a1 * x - 3 * a0) / d1
    return (lead * (x * x + (8 * n * x * x - 4 * x * x) / d2)
            + (n * x * (6 * a1 - 10 * a0)
               + 9 * a1 - 10 * a0 * x + 3 * a1 - 8 * a0) / d2)


# ---------------------------------------------------------------------------
# Stated power-sum identities

# Rows list the coefficients of (n+1)(n+2)...(n+s-i) * x^(s-i) for
# i = 0..s, the trailing entry multiplying the constant 1.
_PROOF_SUM_ROWS = {
    (0, 1): (1, 0),
    (0, 2): (1, 1, 0),
    (0, 3): (1, 3, 1, 0),
    (0, 4): (1, 6, 7, 1, 0),
    (1, 1): (1, 1),
    (1, 2): (1, 3, 1),
    (1, 3): (1, 6, 7, 1),
    (1, 4): (1, 10, 24, 15, 1),
}


def power_sum_paper(n: int, x, r: int, s: int) -> Fraction:
    """Stated value of sum_k p_{n+1,k-r}(x) k^s for r in {0,1}, s in 1..4."""
    if (r, s) not in _PROOF_SUM_ROWS:
        raise DomainError(f"no stated identity for (r={r}, s={s})")
    if n < 1:
        raise DomainError(f"degree n must be >= 1, got {n}")
    x = _rat(x)
    total = Fraction(0)
    for i, c in enumerate(_PROOF_SUM_ROWS[(r, s)]):
        deg = s - i
        rising = 1
        for t in range(1, deg + 1):
            rising *= n + t
        total += c * rising * x ** deg
    return total


# s=1 lines add the constant r; s=2 lines are (n+2)(n+3)x^2 plus the
# tabulated multiples of (n+2)x and 1.
_SHIFT_SUM_QUAD = {0: (1, 0), 1: (3, 1), 2: (5, 4)}


def shifted_power_sum_paper(n: int, x, r: int, s: int) -> Fraction:
    """Stated value of sum_k p_{n+2,k-r}(x) k^s for r in {0,1,2}, s in 0..2."""
    if r not in (0, 1, 2) or s not in (0, 1, 2):
        raise DomainError(f"no stated identity for (r={r}, s={s})")
    if n < 1:
        raise DomainError(f"degree n must be >= 1, got {n}")
    x = _rat(x)
    if s == 0:
        return Fraction(1)
    if s == 1:
        return (n + 2) * x + r
    k1, k0 = _SHIFT_SUM_QUAD[r]
    return (n + 3) * (n + 2) * x * x + k1 * (n + 2) * x + k0


# ---------------------------------------------------------------------------
# Positivity case classification

class PositivityCase(str, enum.Enum):
    CASE1 = "Case1"
    CASE2 = "Case2"
    CASE3 = "Case3"
    CASE4 = "Case4"
    CASE5 = "Case5"
    CASE6 = "Case6"
    CASE7 = "Case7"
    VIOLATES = "ViolatesConstraint"


CASE_EXEMPLARS = {
    1: SequenceSpec.of(Fraction(1), Fraction(1)),
    2: SequenceSpec.of(Fraction(1, 2), Fraction(0)),
    3: SequenceSpec.of(Fraction(3, 2), Fraction(2)),
    4: SequenceSpec.of(Fraction(3, 4), Fraction(1, 2)),
    5: SequenceSpec.of(Fraction(0), Fraction(-1)),
    6: SequenceSpec.of(Fraction(-1, 2), Fraction(-2)),
    7: SequenceSpec.of(Fraction(1, 4), Fraction(-1, 2)),
}


def classify_case(spec: SequenceSpec, n: int) -> PositivityCase:
    """Sort (a0(n), a1(n)) into one of the seven sequence cases.

    Normalization is checked first; equality cases are tested before the
    strict ranges so the classification is total and unambiguous.
    """
    a0 = spec.a0(n)
    a1 = spec.a1(n)
    if 2 * a0 - a1 != 1:
        return PositivityCase.VIOLATES
    if a1 == 1:
        return PositivityCase.CASE1
    if a1 == 0:
        return PositivityCase.CASE2
    if a1 == -1:
        return PositivityCase.CASE5
    if a1 > 1:
        return PositivityCase.CASE3
    if 0 < a1 < 1:
        return PositivityCase.CASE4
    if a1 < -1:
        return PositivityCase.CASE6
    return PositivityCase.CASE7


# ---------------------------------------------------------------------------
# Comparison reports

@dataclass(frozen=True)
class MomentComparison:
    """One formula-vs-oracle row; match holds iff the values are equal."""
    kind: OperatorKind
    n: int
    x: Fraction
    degree: int
    central: bool
    paper_value: Fraction
    oracle_value: Fraction
    match: bool
    discrepancy: Fraction


def _comparison(kind, n, x, degree, central, paper_value) -> MomentComparison:
    x = _rat(x)
    if central:
        oracle = central_moment(kind, n, x, degree)
    else:
        oracle = exact_moment(kind, n, x, degree)
    gap = paper_value - oracle
    return MomentComparison(kind=kind, n=n, x=x, degree=degree,
                            central=central, paper_value=paper_value,
                            oracle_value=oracle, match=(gap == 0),
                            discrepancy=gap)


def compare_mod1_moments(spec: SequenceSpec, n: int, x,
                         degrees=range(5)) -> list:
    kind = Mod1(spec)
    return [_comparison(kind, n, x, j, False,
                        mod1_moment_paper(spec, n, x, j)) for j in degrees]


def compare_mod1_centrals(spec: SequenceSpec, n: int, x,
                          orders=(1, 2, 4)) -> list:
    kind = Mod1(spec)
    return [_comparison(kind, n, x, o, True,
                        mod1_central_paper(spec, n, x, o)) for o in orders]


def compare_mod2_moments(n: int, x, degrees=range(7)) -> list:
    kind = Mod2()
    return [_comparison(kind, n, x, j, False,
                        mod2_moment_paper(n, x, j)) for j in degrees]


def compare_mod2_centrals(n: int, x, orders=range(1, 7)) -> list:
    kind = Mod2()
    return [_comparison(kind, n, x, o, True,
                        mod2_central_paper(n, x, o)) for o in orders]


def compare_split_moments(spec: SequenceSpec, n: int, x,
                          degrees=(0, 1, 2)) -> list:
    rows = []
    for which, kind in (("A", SplitA(spec)), ("B", SplitB(spec))):
        for j in degrees:
            rows.append(_comparison(kind, n, x, j, False,
                                    split_moments_paper(spec, n, x, j, which)))
    return rows
