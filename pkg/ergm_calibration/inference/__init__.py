from .calibration import (CalibratedSurface, RobbinsMonroConfig, build_map,
                          calibrated_log_density, correct_sample,
                          estimate_true_hessian, noisy_grad_log_post,
                          robbins_monro_map)
from .diagnostics import (degeneracy_check, efficiency_ratio, ess,
                          kde_density_grid, relative_efficiency,
                          summarize_chain, tv_distance_2d, tv_grid)
from .oracle import (enumerate_ergm, enumerate_statistics, exact_log_likelihood,
                     exact_mle, exact_posterior_grid, grid_axes)
from .pseudolikelihood import (PseudoPosteriorSurface, grad_log_pl,
                               grad_log_prior, hess_log_pl, hess_log_prior,
                               log_pl, log_prior, mple)
from .samplers import (approximate_exchange, exchange_log_ratio,
                       exchange_sweep, metropolis_hastings,
                       mh_pseudo_posterior)
from .tnt import TntState, simulate_graph, simulate_stats, tnt_step

__all__ = [
    # Pseudolikelihood
    "log_pl",
    "grad_log_pl",
    "hess_log_pl",
    "log_prior",
    "grad_log_prior",
    "hess_log_prior",
    "PseudoPosteriorSurface",
    "mple",

    # Graph simulation
    "TntState",
    "tnt_step",
    "simulate_stats",
    "simulate_graph",

    # Samplers
    "metropolis_hastings",
    "mh_pseudo_posterior",
    "exchange_log_ratio",
    "approximate_exchange",
    "exchange_sweep",

    # Calibration
    "RobbinsMonroConfig",
    "noisy_grad_log_post",
    "robbins_monro_map",
    "estimate_true_hessian",
    "build_map",
    "correct_sample",
    "calibrated_log_density",
    "CalibratedSurface",

    # Diagnostics
    "ess",
    "tv_grid",
    "tv_distance_2d",
    "efficiency_ratio",
    "relative_efficiency",
    "summarize_chain",
    "kde_density_grid",
    "degeneracy_check",

    # Oracle
    "enumerate_ergm",
    "enumerate_statistics",
    "exact_log_likelihood",
    "exact_mle",
    "exact_posterior_grid",
    "grid_axes",
]
