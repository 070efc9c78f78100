"""M-estimation of the MA(1) parameter with bounded-variation score functions.

Thin wrapper over the C++ core; see the package README for the estimator,
the study driver, and the diagnostic surfaces.
"""

import json as _json

from ._ma1est import (
    Distribution,
    EPDiagnostic,
    EstimateResult,
    Sample,
    Score,
    __version__,
    asymptotic_variance,
    check_theorem2_conditions,
    e_psi_squared,
    integral_g_dpsi,
    ks_statistic,
    lambda_alpha,
    local_objective_slope,
    m_estimate,
    make_distribution,
    make_score,
    make_tau_grid,
    make_x_grid,
    objective_ln,
    pilot_estimate,
    residual_derivative,
    residual_filter,
    residual_second_derivative,
    run_study_json,
    simulate_ma1,
    theorem1_residual,
    theoretical_lag1_autocorr,
    weighted_empirical,
    weighted_empirical_true,
)


def run_study(config, threads=0):
    """Run a replicated study from a config dict; returns a result dict."""
    return _json.loads(run_study_json(_json.dumps(config), threads))


def conditions(dist, psi):
    """Normality-condition report as a dict."""
    return _json.loads(check_theorem2_conditions(dist, psi))


__all__ = [
    "Distribution",
    "EPDiagnostic",
    "EstimateResult",
    "Sample",
    "Score",
    "__version__",
    "asymptotic_variance",
    "check_theorem2_conditions",
    "conditions",
    "e_psi_squared",
    "integral_g_dpsi",
    "ks_statistic",
    "lambda_alpha",
    "local_objective_slope",
    "m_estimate",
    "make_distribution",
    "make_score",
    "make_tau_grid",
    "make_x_grid",
    "objective_ln",
    "pilot_estimate",
    "residual_derivative",
    "residual_filter",
    "residual_second_derivative",
    "run_study",
    "run_study_json",
    "simulate_ma1",
    "theorem1_residual",
    "theoretical_lag1_autocorr",
    "weighted_empirical",
    "weighted_empirical_true",
]
