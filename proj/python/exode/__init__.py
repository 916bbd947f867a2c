"""Explicit extrapolation ODE solver with error-free transformations."""

from ._core import (
    DoubleDouble,
    IvpProblem,
    axpy,
    axpy_error,
    build_sequence,
    coefficients,
    dd_cos,
    dd_exp,
    dd_sin,
    fma_error,
    integrate,
    linear_problem,
    max_rel_error,
    moller_update,
    norm_inf,
    propagation_coefficients,
    quick_two_sum,
    resonance_problem,
    run_experiment,
    scal,
    scal_error,
    two_prod,
    two_sum,
)

__all__ = [
    "DoubleDouble",
    "IvpProblem",
    "axpy",
    "axpy_error",
    "build_sequence",
    "coefficients",
    "dd_cos",
    "dd_exp",
    "dd_sin",
    "fma_error",
    "integrate",
    "linear_problem",
    "max_rel_error",
    "moller_update",
    "norm_inf",
    "propagation_coefficients",
    "quick_two_sum",
    "resonance_problem",
    "run_experiment",
    "scal",
    "scal_error",
    "two_prod",
    "two_sum",
]

__version__ = "0.1.0"
