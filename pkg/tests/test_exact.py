"""Exact rational oracle: power sums, kernels, operator moments."""

import math
from fractions import Fraction as F

import pytest

from baskakov.basis import basis_row
from baskakov.errors import DivergentMomentError, DomainError
from baskakov.exact import (PowerSumQuery, baskakov_moment, central_moment,
                            exact_moment, falling_factorial_sum, kernel_poly,
                            moment_kernel, power_sum, stirling2, weight_plan)
from baskakov.kinds import (Baskakov, BaskakovDurrmeyer, Mod1, Mod2,
                            SequenceSpec, SplitA, SplitB)

CASE1 = SequenceSpec.of(1, 1)


def _float_sum(m, r, s, x, terms=400):
    """Brute-force float evaluation of sum_k p_{m,k-r}(x) k^s."""
    row = basis_row(m, float(x), 1e-16)
    return math.fsum(row.values[k - r] * k ** s
                     for k in range(r, min(len(row.values) + r, terms + r)))


class TestStirling2:
    def test_small_table(self):
        assert stirling2(0, 0) == 1
        assert stirling2(4, 2) == 7
        assert stirling2(5, 3) == 25
        assert stirling2(6, 6) == 1

    def test_zero_column(self):
        for s in range(1, 7):
            assert stirling2(s, 0) == 0

    def test_recurrence(self):
        for s in range(1, 8):
            for i in range(1, s + 1):
                assert stirling2(s, i) == (i * stirling2(s - 1, i)
                                           + stirling2(s - 1, i - 1))


class TestFallingFactorialSum:
    def test_against_float_reference(self):
        """Closed form (m)_s^rising * x^s against a truncated float sum."""
        for m in (5, 9):
            for x in (F(1, 2), F(2)):
                row = basis_row(m, float(x), 1e-16)
                for s in range(0, 5):
                    want = math.fsum(
                        row.values[k] * math.prod(range(k, k - s, -1))
                        for k in range(s, len(row.values)))
                    got = float(falling_factorial_sum(m, s, x))
                    assert got == pytest.approx(want, rel=1e-10)

    def test_rising_factorial_form(self):
        for m in (4, 11):
            for s in range(0, 6):
                rising = math.prod(range(m, m + s))
                assert falling_factorial_sum(m, s, F(3, 7)) == (
                    rising * F(3, 7) ** s)


class TestPowerSum:
    def test_shift_zero_against_float(self):
        for m in (6, 9):
            for x in (F(1, 2), F(2)):
                for s in range(0, 5):
                    got = float(power_sum(PowerSumQuery(m, 0, s, x)))
                    assert got == pytest.approx(_float_sum(m, 0, s, x),
                                                rel=1e-10)

    def test_shifted_against_float(self):
        for r in (1, 2):
            for s in range(0, 4):
                got = float(power_sum(PowerSumQuery(8, r, s, F(1))))
                assert got == pytest.approx(_float_sum(8, r, s, F(1)),
                                            rel=1e-10)

    def test_normalization_row(self):
        for m in (3, 10, 40):
            assert power_sum(PowerSumQuery(m, 0, 0, F(5, 3))) == 1

    def test_shift_moves_constant(self):
        """With k^1 and shift r, the sum is the unshifted mean plus r."""
        for r in (1, 2):
            base = power_sum(PowerSumQuery(12, 0, 1, F(2)))
            assert power_sum(PowerSumQuery(12, r, 1, F(2))) == base + r

    def test_domain_validation(self):
        with pytest.raises(DomainError):
            PowerSumQuery(5, 3, 1, F(1))
        with pytest.raises(DomainError):
            PowerSumQuery(5, 0, 9, F(1))
        with pytest.raises(DomainError):
            PowerSumQuery(5, 0, 1, F(-1))


class TestMomentKernel:
    def test_reference_value(self):
        assert moment_kernel(10, 3, 1) == F(1, 2)

    def test_degree_zero_is_one(self):
        for n in (3, 8):
            for k in (0, 2, 11):
                assert moment_kernel(n, k, 0) == 1

    def test_product_form(self):
        """Kernel j=2 equals (k+1)(k+2) / ((n-2)(n-3))."""
        for n in (5, 12):
            for k in (0, 4, 9):
                want = F((k + 1) * (k + 2), (n - 2) * (n - 3))
                assert moment_kernel(n, k, 2) == want

    def test_kernel_poly_agrees_pointwise(self):
        """Numerator coefficients in k assemble back into the kernel."""
        n = 11
        for j in range(0, 5):
            coeffs = kernel_poly(j)
            den = math.prod(range(n - j - 1, n - 1))
            for k in (0, 3, 8):
                num = sum(c * k ** p for p, c in enumerate(coeffs))
                assert F(num, den) == moment_kernel(n, k, j)

    def test_divergence_guard(self):
        with pytest.raises(DivergentMomentError):
            moment_kernel(5, 0, 4)


class TestOperatorMoments:
    def test_point_evaluation_moments(self):
        """Sampling-type operator: t^0, t^1 exact, t^2 has the 1/n term."""
        for n in (4, 9):
            for x in (F(1, 3), F(2)):
                assert baskakov_moment(n, x, 0) == 1
                assert baskakov_moment(n, x, 1) == x
                assert baskakov_moment(n, x, 2) == x * x + x * (1 + x) / n

    def test_exact_moment_rejects_sampling_kind(self):
        """The integral oracle routes the sampling operator elsewhere."""
        with pytest.raises(DomainError):
            exact_moment(Baskakov(), 7, F(1, 2), 1)

    def test_integral_operator_first_moment(self):
        # (n x + 1) / (n - 2) at n = 10, x = 1
        assert exact_moment(BaskakovDurrmeyer(), 10, F(1), 1) == F(11, 8)

    def test_central_moment_expansion_is_consistent(self):
        """Binomial expansion of (t-x)^order in raw moments."""
        kind = BaskakovDurrmeyer()
        n, x = 9, F(1, 2)
        for order in range(0, 5):
            want = sum(
                math.comb(order, i) * exact_moment(kind, n, x, i)
                * (-x) ** (order - i)
                for i in range(order + 1))
            assert central_moment(kind, n, x, order) == want

    def test_first_modification_normalization(self):
        for n in (6, 15):
            for x in (F(0), F(3, 4)):
                assert exact_moment(Mod1(CASE1), n, x, 0) == 1

    def test_second_modification_first_central_vanishes(self):
        for n in (8, 12, 31):
            for x in (F(0), F(1, 4), F(2)):
                assert central_moment(Mod2(), n, x, 1) == 0

    def test_decomposition_moments_cancel(self):
        """Moments of the two split pieces sum against the first mod."""
        spec = SequenceSpec.of(F(3, 4), F(1, 2))
        for n in (8, 20):
            for x in (F(1, 2), F(2)):
                for j in range(0, 5):
                    total = (exact_moment(Mod1(spec), n, x, j)
                             + exact_moment(SplitA(spec), n, x, j)
                             + exact_moment(SplitB(spec), n, x, j))
                    assert total == 0

    def test_degree_cap(self):
        with pytest.raises(DomainError):
            exact_moment(Mod2(), 20, F(1), 7)

    def test_divergent_moment(self):
        with pytest.raises(DivergentMomentError):
            exact_moment(BaskakovDurrmeyer(), 5, F(1), 4)


class TestWeightPlan:
    def test_second_modification_plan(self):
        plan = weight_plan(Mod2(), 10, F(1))
        assert plan == ((F(-33, 2), 12, 0), (F(40), 12, 1), (F(-45, 2), 12, 2))

    def test_first_modification_plan_matches_sequences(self):
        n, x = 9, F(1, 2)
        plan = weight_plan(Mod1(CASE1), n, x)
        a0, a1 = CASE1.a0(n), CASE1.a1(n)
        assert plan == (((a0 + a1 * x), n + 1, 0),
                        ((a0 - a1 * (1 + x)), n + 1, 1))

    def test_plans_of_split_pieces_cancel_first_mod(self):
        n, x = 11, F(2)
        spec = SequenceSpec.of(F(3, 2), 2)
        combined = {}
        for kind in (Mod1(spec), SplitA(spec), SplitB(spec)):
            for c, m, r in weight_plan(kind, n, x):
                combined[(m, r)] = combined.get((m, r), F(0)) + c
        assert all(v == 0 for v in combined.values())
