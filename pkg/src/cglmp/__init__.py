"""Maximal quantum violations of the CGLMP Bell inequality for two qudits.

Builds the reduced Bell operator under the optimal multiport settings,
solves for its extreme eigenpair at large dimension, and cross-validates
against closed-form state evaluations and the joint-probability
definition of the inequality.
"""

from .analysis import (
    FitModel,
    app_state,
    approx_error_rate,
    bell_value_schmidt,
    fit_power_law,
    mes_bell_limit,
    mes_bell_value,
    mes_state,
)
from .core import (
    GeneralState,
    MeasurementSettings,
    SchmidtState,
    mod_d,
    optimal_settings,
    outcome_weight,
    sign_nonneg,
)
from .operator import (
    BlockStructureError,
    FullBellMatrix,
    ReducedBellOperator,
    extract_first_block,
    full_bell_matrix,
    reduced_bell_coefficients,
    reduced_bell_coefficients_sine_sum,
)
from .probability import (
    JointProbabilityTable,
    bell_value_probabilistic,
    correlation,
    joint_probabilities,
)
from .spectral import (
    ConvergenceError,
    EigenResult,
    autocorrelation,
    dense_max_eigenpair,
    max_eigenpair,
    toeplitz_matvec,
)

__version__ = "0.1.0"

__all__ = [
    "BlockStructureError",
    "ConvergenceError",
    "EigenResult",
    "FitModel",
    "FullBellMatrix",
    "GeneralState",
    "JointProbabilityTable",
    "MeasurementSettings",
    "ReducedBellOperator",
    "SchmidtState",
    "app_state",
    "approx_error_rate",
    "autocorrelation",
    "bell_value_probabilistic",
    "bell_value_schmidt",
    "correlation",
    "dense_max_eigenpair",
    "extract_first_block",
    "fit_power_law",
    "full_bell_matrix",
    "joint_probabilities",
    "max_eigenpair",
    "mes_bell_limit",
    "mes_bell_value",
    "mes_state",
    "mod_d",
    "optimal_settings",
    "outcome_weight",
    "reduced_bell_coefficients",
    "reduced_bell_coefficients_sine_sum",
    "sign_nonneg",
    "toeplitz_matvec",
]
