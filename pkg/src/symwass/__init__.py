"""Asymmetry of multivariate samples via the Wasserstein distance to their reflection."""

__version__ = "0.1.0"

from .assignment import AssignmentResult, brute_force_assignment, solve_assignment
from .bootstrap import (
    BootstrapConfig,
    BootstrapEstimate,
    bootstrap_reflection_estimate,
    split_half_reflection_estimate,
)
from .bounds import (
    BoundConfig,
    BoundReport,
    Estimator,
    NemirovskiReport,
    compare_symmetrization_bounds,
    confidence_radius,
    correction_term,
    mean_deviation_norm,
    nemirovski_bounds,
    nemirovski_experiment,
    rademacher_average,
)
from .metric import MetricKind, distance
from .simgen import (
    GeneratorKind,
    GeneratorSpec,
    gen_gauss_mixture,
    gen_gaussian,
    gen_rademacher,
    gen_shifted_beta,
)
from .symtest import (
    MardiaReport,
    SymmetryTestReport,
    SymTestConfig,
    TieRule,
    chi_squared_sf,
    covariance_inverse_apply,
    mardia_skewness_test,
    permutation_symmetry_test,
)
from .wasserstein import (
    empirical_wasserstein,
    reflection_distance_split,
    sorted_1d_wasserstein,
)
