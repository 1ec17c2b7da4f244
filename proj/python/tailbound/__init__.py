"""Lower bounds for P(xi >= 0) of centered random variables from moment
ratios, the discrete distributions attaining them, a moment-LP verification
oracle, and second-order Rademacher/Gaussian chaos applications."""

from ._core import (
    ChaosCoefficients,
    DiscreteDistribution,
    EnumerationResult,
    MomentConstraintSet,
    MonteCarloResult,
    Spectrum,
    VectorSystem,
    best_bound,
    bound_first_p,
    bound_first_p_explicit,
    bound_fourth,
    bound_p2_closed,
    bound_pth,
    certify,
    classical_first_p,
    classical_fourth,
    classical_pth,
    eigen_symmetric,
    exponential_sum_stats,
    extremal_first_p,
    extremal_fourth_family,
    extremal_fourth_twopoint,
    fourth_branch_point,
    gaussian_chaos_moments,
    gaussian_hilbert_prob,
    hilbert_norm_probs,
    hilbert_norm_probs_mc,
    interpolation_constant,
    chaos_ratio_42,
    mc_estimate,
    min_prob_lp,
    min_prob_parametric,
    psi,
    psi_inverse,
    rademacher_enumerate,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
