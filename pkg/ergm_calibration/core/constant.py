"""
Centralized defaults for ERGM calibration runs.

Every value is a config default and can be overridden in the run file.
"""

# =========================
# Prior
# =========================

PRIOR_VARIANCE = 30.0

# =========================
# Main MCMC chain
# =========================

CHAIN_ITERATIONS = 40_000
CHAIN_BURN_IN = 10_000
PROPOSAL_TUNING = 1.0

# =========================
# TNT graph simulation
# =========================

TNT_BURN_IN = 1_000
TNT_THIN = 30
TNT_DRAWS = 400  # 12,000 post burn-in steps thinned by 30

# =========================
# Maximum pseudolikelihood
# =========================

MPLE_GRAD_TOL = 1e-6
MPLE_STEP_TOL = 1e-8
MPLE_MAX_ITERS = 500
MPLE_DIVERGENCE_BOUND = 50.0
NEWTON_POLISH_ITERS = 50

# Variance weights p(1-p) are evaluated with the linear predictor clamped here
ETA_CLAMP = 36.0

# =========================
# Robbins-Monro / curvature
# =========================

RM_ALPHA = 0.001
RM_TOL = 1e-3
RM_MAX_ITERS = 5_000
RM_PERSISTENCE = 5
RM_SATURATION_SHARE = 0.5
RM_MIN_ITERS_FOR_SATURATION = 10
RM_DENSE_WARNING = 0.9
HESSIAN_GRAPHS = 400
MAP_IDENTITY_TOL = 1e-10

# =========================
# Approximate exchange
# =========================

AEA_AUX_ITERS = 10_000

# =========================
# Diagnostics
# =========================

ESS_MIN_LENGTH = 10
TV_BINS = 100
TV_PADDING = 0.05
KDE_POINTS = 512
DEGENERACY_SUBSAMPLE = 600
DEGENERACY_DRAWS_PER_THETA = 1
DEGENERACY_DENSITY = 0.9
DEGENERACY_FRACTION = 0.1
EDGE_HISTOGRAM_BINS = 50

# =========================
# Exact enumeration
# =========================

ORACLE_MAX_NODES = 6
ORACLE_GRID_POINTS = 121

# =========================
# Artifacts
# =========================

FLOAT_FORMAT = "%.17g"
CHAIN_RAW_FILE = "chain_raw.csv"
CHAIN_CALIBRATED_FILE = "chain_calibrated.csv"
CHAIN_EXCHANGE_FILE = "chain_aea.csv"
CALIBRATION_MAP_FILE = "calibration_map.txt"
SUMMARY_FILE = "summary.txt"
TIMINGS_FILE = "timings.txt"
EDGE_HISTOGRAM_FILE = "edge_histogram.csv"
TV_GRID_FILE = "tv_grid.csv"
ORACLE_REPORT_FILE = "oracle_report.txt"
