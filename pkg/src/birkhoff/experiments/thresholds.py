"""Frozen tolerances for probes that have no published number.

Each entry was fixed from an oracle sweep (``birkhoff oracle``) over
n = 18..25 and is recorded, with the raw sweep values, in the provenance file.
"""

THRESHOLDS = {
    # f_n vs f_{n+1}: median gap on the 1000-point midpoint grid, n = 24
    "f_cauchy_median_n24": 0.02,
    # f_{20,6} vs h_20, sup over the 1000-point grid
    "fnm_vs_h_sup_n20": 0.01,
    # |f_n(x)| <= x * (1 + slack) and |f_n(x)| <= x + slack
    "f_x_envelope_slack": 0.1,
    # adjacent-cell drops larger than 1e-3
    "beta_monotone_violation_n24": 0.02,
    "beta_periodic_violation_n16": 0.05,
    "gamma_monotone_violation_n24": 0.05,
    # sup residuals relative to c = beta(1-)
    "beta_selfsim_lower_sup_rel": 0.05,
    "beta_selfsim_upper_sup_rel": 0.40,
    "h_series_at_one_minus_tol": 3e-3,
    "h_series_vs_h_sup": 0.02,
    "gamma_forms_sup": 0.02,
    # period-2 and period-1 families on a common grid
    "silver_corr_min": 0.9,
    "half_silver_anticorr_min": 0.6,
    # histogram of S_k/log k on [0, 2], 200 bins, K = q_24
    "symmetry_defect_q24": 0.65,
    # max_m<=32 |rho_m(q_24) - rho_m(q_20)|
    "fourier_stability_gap": 0.1,
    # fraction of F_n cells on the wrong side of the real axis
    "half_plane_violation": 0.01,
    # tail-window extremes of S_k/log k, n = 18..24
    "limsup_window_gap": 0.05,
}
