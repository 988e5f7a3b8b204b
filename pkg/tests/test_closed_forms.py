"""Reference formulas, oracle comparisons, and case classification.

The comparison reports are the interesting part: a handful of the
transcribed formulas disagree with the exact oracle, and those
disagreements are themselves frozen expectations here.  See the README
for the list.
"""

from fractions import Fraction

import pytest

from baskakov import (
    CASE_EXEMPLARS,
    DomainError,
    MomentComparison,
    PositivityCase,
    PowerSumQuery,
    SequenceSpec,
    classify_case,
    compare_mod1_centrals,
    compare_mod1_moments,
    compare_mod2_centrals,
    compare_mod2_moments,
    compare_split_moments,
    corollary_limits,
    mod1_central_paper,
    mod1_moment_paper,
    mod2_central_paper,
    mod2_moment_paper,
    power_sum,
    power_sum_paper,
    shifted_power_sum_paper,
    split_moments_paper,
)
from baskakov.kinds import RationalFn

F = Fraction

CASE1 = CASE_EXEMPLARS[1]
CASE3 = CASE_EXEMPLARS[3]

X_POINTS = (F(1, 2), F(2), F(7, 3))


class TestTranscriptionAnchors:
    """Spot values pinned by hand so a typo in a coefficient table fails."""

    def test_corollary_limits(self):
        assert corollary_limits(1, 1, 1) == (3, 13, 49)
        assert corollary_limits(F(3, 2), 2, F(1, 2)) == (F(1), F(7, 2), F(57, 8))

    def test_mod1_low_degrees(self):
        # degree 0 is the normalization constant 2*a0 - a1, degree 1 adds
        # the (1+2x)(3a0-2a1)/(n-2) drift term.
        assert mod1_moment_paper(CASE1, 12, F(1), 0) == 1
        assert mod1_moment_paper(CASE1, 12, F(1), 1) == 1 + F(3, 10)

    def test_mod2_low_degrees(self):
        assert mod2_moment_paper(12, F(1), 0) == 1
        assert mod2_moment_paper(12, F(1), 1) == 1
        assert mod2_moment_paper(12, F(1), 2) == 1 - F(35, 90)

    def test_mod2_first_central_vanishes(self):
        assert mod2_central_paper(12, F(1), 1) == 0
        assert mod2_central_paper(50, F(7, 3), 1) == 0

    def test_power_sum_normalization_row(self):
        # r=0, s=1 row is just (n+1) x
        assert power_sum_paper(9, F(1, 2), 0, 1) == F(5)


class TestComparisonReports:
    @pytest.mark.parametrize("spec", [CASE1, CASE3])
    @pytest.mark.parametrize("x", X_POINTS)
    def test_mod1_moment_flags(self, spec, x):
        flags = [c.match for c in compare_mod1_moments(spec, 12, x)]
        assert flags == [True, True, True, True, False]

    @pytest.mark.parametrize("spec", [CASE1, CASE3])
    @pytest.mark.parametrize("x", X_POINTS)
    def test_mod1_central_flags(self, spec, x):
        flags = [c.match for c in compare_mod1_centrals(spec, 12, x)]
        assert flags == [True, False, False]

    @pytest.mark.parametrize("x", X_POINTS)
    def test_mod2_moment_flags_all_match(self, x):
        assert all(c.match for c in compare_mod2_moments(12, x))

    @pytest.mark.parametrize("x", X_POINTS)
    def test_mod2_central_flags_all_match(self, x):
        assert all(c.match for c in compare_mod2_centrals(12, x))

    @pytest.mark.parametrize("spec", [CASE1, CASE3])
    @pytest.mark.parametrize("x", X_POINTS)
    def test_split_flags(self, spec, x):
        # rows come out A then B, degrees 0..2 each; both quadratic
        # formulas disagree with the oracle.
        flags = [c.match for c in compare_split_moments(spec, 12, x)]
        assert flags == [True, True, False, True, True, False]

    def test_record_fields_are_consistent(self):
        rows = compare_mod1_moments(CASE3, 12, F(1, 2))
        for row in rows:
            assert isinstance(row, MomentComparison)
            assert row.discrepancy == row.paper_value - row.oracle_value
            assert row.match == (row.discrepancy == 0)
        assert rows[4].discrepancy != 0


class TestPowerSums:
    ROWS = ((0, 1), (0, 2), (0, 3), (0, 4), (1, 1), (1, 2), (1, 3))

    @pytest.mark.parametrize("n", [4, 9])
    @pytest.mark.parametrize("x", [F(1, 2), F(7, 3)])
    def test_stated_rows_match_oracle(self, n, x):
        for r, s in self.ROWS:
            paper = power_sum_paper(n, x, r, s)
            oracle = power_sum(PowerSumQuery(m=n + 1, r=r, s=s, x=x))
            assert paper == oracle, (r, s)

    @pytest.mark.parametrize("n", [4, 9])
    @pytest.mark.parametrize("x", [F(1, 2), F(7, 3)])
    def test_quartic_shifted_row_defect(self, n, x):
        """The r=1, s=4 row is off by exactly (n+1)(n+2) x^2.

        The printed x^2 coefficient is 24 where matching the oracle
        needs 25; the other four entries agree.
        """
        paper = power_sum_paper(n, x, 1, 4)
        oracle = power_sum(PowerSumQuery(m=n + 1, r=1, s=4, x=x))
        assert paper - oracle == -(n + 1) * (n + 2) * x * x

    @pytest.mark.parametrize("n", [4, 9])
    @pytest.mark.parametrize("x", [F(1, 2), F(7, 3)])
    def test_shifted_family_matches_oracle(self, n, x):
        for r in (0, 1, 2):
            for s in (0, 1, 2):
                paper = shifted_power_sum_paper(n, x, r, s)
                oracle = power_sum(PowerSumQuery(m=n + 2, r=r, s=s, x=x))
                assert paper == oracle, (r, s)

    def test_unknown_rows_rejected(self):
        with pytest.raises(DomainError):
            power_sum_paper(9, F(1), 0, 5)
        with pytest.raises(DomainError):
            power_sum_paper(9, F(1), 2, 1)
        with pytest.raises(DomainError):
            shifted_power_sum_paper(9, F(1), 3, 1)
        with pytest.raises(DomainError):
            shifted_power_sum_paper(9, F(1), 0, 3)


class TestClassification:
    def test_exemplars_hit_their_cases(self):
        for i, spec in CASE_EXEMPLARS.items():
            assert classify_case(spec, 10) == PositivityCase(f"Case{i}")

    def test_constraint_violation(self):
        free = SequenceSpec.of(1, 0, require_normalized=False)
        assert classify_case(free, 10) == PositivityCase.VIOLATES
        assert PositivityCase.VIOLATES.value == "ViolatesConstraint"

    def test_nonconstant_sequences_classify_at_finite_n(self):
        # a0 = (2n+1)/(2n), a1 = (n+1)/n satisfy the constraint for all n
        # and tend to 1, but classification happens at the given n, where
        # a1 > 1 strictly.
        near = SequenceSpec(RationalFn(1, 2, 0, 2), RationalFn(1, 1, 0, 1))
        assert near.satisfies_constraint
        assert classify_case(near, 10) == PositivityCase.CASE3
        assert classify_case(near, 10 ** 6) == PositivityCase.CASE3


class TestDomainGuards:
    def test_degree_windows(self):
        with pytest.raises(DomainError):
            mod1_moment_paper(CASE1, 12, F(1), 5)
        with pytest.raises(DomainError):
            mod2_moment_paper(12, F(1), 7)
        with pytest.raises(DomainError):
            mod2_central_paper(12, F(1), 0)

    def test_small_n_rejected(self):
        with pytest.raises(DomainError):
            mod1_moment_paper(CASE1, 5, F(1), 2)
        with pytest.raises(DomainError):
            mod2_moment_paper(7, F(1), 2)
        with pytest.raises(DomainError):
            split_moments_paper(CASE1, 3, F(1), 1, "A")

    def test_central_order_three_is_oracle_only(self):
        with pytest.raises(DomainError, match="oracle-only"):
            mod1_central_paper(CASE1, 12, F(1), 3)

    def test_floats_rejected(self):
        with pytest.raises(DomainError):
            mod1_moment_paper(CASE1, 12, 0.5, 1)
        with pytest.raises(DomainError):
            mod2_moment_paper(12, 0.5, 1)

    def test_split_rejects_bad_selector(self):
        with pytest.raises(DomainError):
            split_moments_paper(CASE1, 12, F(1), 3, "A")
        with pytest.raises(DomainError):
            split_moments_paper(CASE1, 12, F(1), 1, "C")
