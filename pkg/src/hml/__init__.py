"""Hadamard weighted geometric means of nonnegative matrices and the
spectral radius, operator norm and numerical radius bounds they satisfy."""

from .matrix import (ConfigurationError, Constraint, WeightVector, alternating_factors,
                     as_nonnegative, build_B_alpha, build_B_even, build_C_alpha, build_C_odd,
                     cyclic_factor_B, cyclic_product_P, entrywise_leq, gram_S,
                     hadamard_mean, hadamard_power, hadamard_product,
                     weighted_geometric_mean)
from .spectral import (NormKind, SpectralEstimate, numerical_radius, operator_norm, rho,
                       spectral_radius)
from .oracle import spectral_radius_oracle
from .report import InequalityReport, Verdict, bundle, write_report
from .suites import SUITES, Sweep, TrialConfig, run_counterexample, run_sweep, run_trial
from .kernels import KernelSpec, convergence_trend, discretize, refine_and_check
from .io import load_matrix, save_matrix

__all__ = [
    "ConfigurationError",
    "Constraint",
    "WeightVector",
    "alternating_factors",
    "as_nonnegative",
    "build_B_alpha",
    "build_B_even",
    "build_C_alpha",
    "build_C_odd",
    "cyclic_factor_B",
    "cyclic_product_P",
    "entrywise_leq",
    "gram_S",
    "hadamard_mean",
    "hadamard_power",
    "hadamard_product",
    "weighted_geometric_mean",
    "NormKind",
    "SpectralEstimate",
    "numerical_radius",
    "operator_norm",
    "rho",
    "spectral_radius",
    "spectral_radius_oracle",
    "InequalityReport",
    "Verdict",
    "bundle",
    "write_report",
    "SUITES",
    "Sweep",
    "TrialConfig",
    "run_counterexample",
    "run_sweep",
    "run_trial",
    "KernelSpec",
    "convergence_trend",
    "discretize",
    "refine_and_check",
    "load_matrix",
    "save_matrix",
]

__version__ = "0.1.0"
