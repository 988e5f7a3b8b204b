"""Baskakov-type operators: classical, integral, and boosted variants.

Exact rational moment oracle, closed-form comparison reports,
convergence and Voronovskaja studies, and a CSV-emitting CLI.
"""

from .analysis import (ConvergenceReport, VoronovskajaReport,
                       central_moment_scaling, convergence_report, fit_order,
                       sup_error, voronovskaja_limit_mod1,
                       voronovskaja_limit_mod2_derived, voronovskaja_residuals)
from .basis import BasisRow, basis_row, eval_basis, truncation_index
from .closed_forms import (CASE_EXEMPLARS, MomentComparison, PositivityCase,
                           classify_case, compare_mod1_centrals,
                           compare_mod1_moments, compare_mod2_centrals,
                           compare_mod2_moments, compare_split_moments,
                           corollary_limits, mod1_central_paper,
                           mod1_moment_paper, mod2_central_paper,
                           mod2_moment_paper, power_sum_paper,
                           shifted_power_sum_paper, split_moments_paper)
from .errors import (BaskakovError, DivergentMomentError, DomainError,
                     MissingDerivativesError, NonConvergenceError, ParseError,
                     UnboundedFunctionError, UnsupportedSequenceError,
                     ZeroError)
from .exact import (PowerSumQuery, baskakov_moment, central_moment,
                    exact_moment, falling_factorial_sum, moment_kernel,
                    power_sum, stirling2)
from .kinds import (FUNCTIONS, Baskakov, BaskakovDurrmeyer, Mod1, Mod2,
                    OperatorKind, RationalFn, SequenceSpec, SplitA, SplitB,
                    TestFunction)
from .operators import (apply, empirical_positivity, mod1_weight, mod2_weight,
                        split_weights)
from .quad import QuadConfig, QuadResult, durrmeyer_coefficient, \
    integrate_unit_interval

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # kinds
    "Baskakov", "BaskakovDurrmeyer", "Mod1", "Mod2", "SplitA", "SplitB",
    "OperatorKind", "RationalFn", "SequenceSpec", "TestFunction", "FUNCTIONS",
    # errors
    "BaskakovError", "DomainError", "DivergentMomentError",
    "UnsupportedSequenceError", "UnboundedFunctionError",
    "MissingDerivativesError", "ZeroError", "ParseError",
    "NonConvergenceError",
    # basis
    "BasisRow", "eval_basis", "basis_row", "truncation_index",
    # exact oracle
    "PowerSumQuery", "stirling2", "falling_factorial_sum", "power_sum",
    "moment_kernel", "exact_moment", "central_moment", "baskakov_moment",
    # quadrature
    "QuadConfig", "QuadResult", "integrate_unit_interval",
    "durrmeyer_coefficient",
    # operators
    "apply", "mod1_weight", "mod2_weight", "split_weights",
    "empirical_positivity",
    # closed forms
    "MomentComparison", "PositivityCase", "CASE_EXEMPLARS",
    "mod1_moment_paper", "mod1_central_paper", "corollary_limits",
    "mod2_moment_paper", "mod2_central_paper", "split_moments_paper",
    "power_sum_paper", "shifted_power_sum_paper",
    "classify_case", "compare_mod1_moments", "compare_mod1_centrals",
    "compare_mod2_moments", "compare_mod2_centrals", "compare_split_moments",
    # analysis
    "ConvergenceReport", "VoronovskajaReport", "sup_error", "fit_order",
    "convergence_report", "voronovskaja_limit_mod1",
    "voronovskaja_limit_mod2_derived", "voronovskaja_residuals",
    "central_moment_scaling",
]
