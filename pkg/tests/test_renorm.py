import json
import math

import numpy as np
import pytest

from birkhoff import GOLDEN, DegenerateScaling, DimensionMismatch, Observable, convergent, preset
from birkhoff.experiments.thresholds import THRESHOLDS
from birkhoff.renorm import (
    LOG_4PI2_OVER_5,
    StepFunction,
    beta_selfsimilarity_report,
    build_beta_n,
    build_beta_periodic,
    build_f_n,
    build_f_nm,
    build_gamma,
    build_h_n,
    build_s_n,
    estimate_h_from_f,
    grid_correlation,
    grid_gap,
    h_series_conventions,
    limit_estimate,
    monotonicity_violation,
    predict_Sqn_limit,
    x_envelope_ratio,
)
from birkhoff.sums import subsequence_at_convergents

LOGSIN = Observable.logsin()


def test_trivial_f():
    f = build_f_n(LOGSIN, GOLDEN, 1)
    assert f.q == 1 and f.vals.tolist() == [0.0]


@pytest.mark.parametrize("n", range(1, 26))
def test_f_n1_is_f_n(n, golden_f):
    assert build_f_nm(LOGSIN, GOLDEN, n, 1).vals.tobytes() == golden_f(n).vals.tobytes()


def test_m_zero_rejected():
    with pytest.raises(ValueError):
        build_f_nm(LOGSIN, GOLDEN, 10, 0)


def test_step_lookup_convention():
    s = StepFunction(np.array([0.0, 1.0, 2.0, 3.0]))
    assert s(np.array([0.0, 0.24, 0.25, 0.99])).tolist() == [0.0, 0.0, 1.0, 3.0]
    assert s.one_minus == 3.0
    assert s.resample(8).vals.tolist() == [0, 0, 1, 1, 2, 2, 3, 3]


def test_f_x_envelope(golden_f):
    assert x_envelope_ratio(golden_f(24)) <= 1 + THRESHOLDS["f_x_envelope_slack"]


def test_f_cauchy_median(golden_f):
    assert np.median(grid_gap(golden_f(24), golden_f(25))) < THRESHOLDS["f_cauchy_median_n24"]


def test_f_cauchy_median_and_p90_decrease(golden_f):
    med = [np.median(grid_gap(golden_f(n), golden_f(n + 1))) for n in (18, 20, 22, 24)]
    p90 = [np.percentile(grid_gap(golden_f(n), golden_f(n + 1)), 90) for n in (18, 20, 22, 24)]
    assert np.all(np.diff(med) < 0) and np.all(np.diff(p90) < 0)


def test_fnm_approaches_h():
    fnm = build_f_nm(LOGSIN, GOLDEN, 20, 6)
    h = build_h_n(LOGSIN, GOLDEN, 20)
    assert np.max(grid_gap(fnm, h)) < THRESHOLDS["fnm_vs_h_sup_n20"]


def test_mean_invariance():
    shifted = LOGSIN.with_shift(0.5)
    for build in (build_f_n, build_h_n):
        a, b = build(LOGSIN, GOLDEN, 16), build(shifted, GOLDEN, 16)
        assert np.max(np.abs(a.vals - b.vals)) < 1e-12
    a, b = build_f_nm(LOGSIN, GOLDEN, 14, 3), build_f_nm(shifted, GOLDEN, 14, 3)
    assert np.max(np.abs(a.vals - b.vals)) < 1e-12


def test_h_one_minus():
    assert abs(build_h_n(LOGSIN, GOLDEN, 24).one_minus + 0.30945) < 2e-3


@pytest.mark.parametrize("n", [14, 18, 22])
def test_S_qn_reconstruction(n):
    h = build_h_n(LOGSIN, GOLDEN, n)
    r = subsequence_at_convergents(LOGSIN, GOLDEN, n, n_min=n)[0]
    assert abs(r.X_q + 2 * math.log(r.q) + h.one_minus - r.S_q) < 1e-6


def test_s_n_nan_cells():
    s = build_s_n(LOGSIN, GOLDEN, 10)
    assert np.isnan(s.vals[:2]).all() and np.isfinite(s.vals[2:]).all()


def test_beta_zero_in_zero_out():
    zero = StepFunction(np.zeros(100))
    assert not build_beta_n(zero, GOLDEN).vals.any()


def test_beta_one_minus_and_monotone(golden_f):
    beta = build_beta_n(golden_f(24), GOLDEN)
    assert abs(beta.one_minus - 0.104) < 5e-3
    assert monotonicity_violation(beta) < THRESHOLDS["beta_monotone_violation_n24"]


def test_beta_periodic_degenerates_to_beta(golden_f):
    f = golden_f(16)
    assert np.array_equal(build_beta_periodic(f, f, 1, 1, GOLDEN).vals, build_beta_n(f, GOLDEN).vals)


def test_beta_periodic_dimension_check(golden_f):
    with pytest.raises(DimensionMismatch):
        build_beta_periodic(golden_f(10), golden_f(11), 1, 1, GOLDEN)


def test_beta_periodic_sqrt3():
    rot = preset("sqrt3minus1over2")
    assert rot.cf_period == (2, 1)
    p, q = rot.cf_period
    f = build_f_n(LOGSIN, rot, 16)
    ft = build_f_n(LOGSIN, rot, 17).resample(f.q)
    beta = build_beta_periodic(f, ft, p, q, rot)
    assert monotonicity_violation(beta) < THRESHOLDS["beta_periodic_violation_n16"]


def test_silver_period_one_family_correlated():
    rot = preset("silver")
    c = grid_correlation(build_f_n(LOGSIN, rot, 12), build_f_n(LOGSIN, rot, 13))
    assert c > THRESHOLDS["silver_corr_min"]


def test_half_silver_family_anticorrelated():
    rot = preset("sqrt2minus1over2")
    c = grid_correlation(build_f_n(LOGSIN, rot, 14), build_f_n(LOGSIN, rot, 15))
    assert -c > THRESHOLDS["half_silver_anticorr_min"]


def test_selfsimilarity_golden(golden_f):
    rep = beta_selfsimilarity_report(build_beta_n(golden_f(24), GOLDEN), GOLDEN)
    assert rep.sup_lower < THRESHOLDS["beta_selfsim_lower_sup_rel"] * rep.c
    assert rep.sup_upper < THRESHOLDS["beta_selfsim_upper_sup_rel"] * rep.c
    assert rep.l1_lower <= rep.sup_lower and rep.l1_upper <= rep.sup_upper


def test_selfsimilarity_residuals_shrink(golden_f):
    r18 = beta_selfsimilarity_report(build_beta_n(golden_f(18), GOLDEN), GOLDEN)
    r24 = beta_selfsimilarity_report(build_beta_n(golden_f(24), GOLDEN), GOLDEN)
    assert r24.sup_lower / r24.c <= r18.sup_lower / r18.c
    assert r24.sup_upper / r24.c <= r18.sup_upper / r18.c


def test_selfsimilarity_linear_ramp():
    q = 10_000
    ramp = StepFunction(np.arange(q) / q)
    rep = beta_selfsimilarity_report(ramp, GOLDEN)
    # both rescalings of x are x again; the grid error of a, b, c is amplified by 1/(1 - alpha)
    assert rep.a == pytest.approx(GOLDEN.value, abs=2 / q) and rep.c == pytest.approx(1, abs=2 / q)
    assert rep.sup_lower < 10 / q and rep.sup_upper < 10 / q


def test_selfsimilarity_degenerate():
    with pytest.raises(DegenerateScaling):
        beta_selfsimilarity_report(StepFunction(np.ones(100)), GOLDEN)
    with pytest.raises(DegenerateScaling):
        beta_selfsimilarity_report(StepFunction(np.zeros(2)), GOLDEN)


def test_h_series_zero():
    out = estimate_h_from_f(StepFunction(np.zeros(50)), GOLDEN, 10)
    assert not out.vals.any()
    assert out.meta["tail_bound"] == pytest.approx(GOLDEN.value ** 11 / (1 - GOLDEN.value))


def test_h_series_one_minus(golden_f):
    est = estimate_h_from_f(golden_f(24), GOLDEN, 40)
    assert abs(est.one_minus + 0.30945) < THRESHOLDS["h_series_at_one_minus_tol"]
    assert np.max(np.abs(est.vals - build_h_n(LOGSIN, GOLDEN, 24).vals)) < THRESHOLDS["h_series_vs_h_sup"]


def test_h_series_conventions_reported():
    both = h_series_conventions(LOGSIN, GOLDEN, 20, 40)
    h = build_h_n(LOGSIN, GOLDEN, 20)
    assert both["same"].q == both["previous"].q == h.q
    assert np.max(np.abs(both["same"].vals - h.vals)) < THRESHOLDS["h_series_vs_h_sup"]


def test_predict_S_qn_limit():
    assert predict_Sqn_limit(-0.30945) == pytest.approx(1.75687, abs=1e-5)
    assert predict_Sqn_limit(0.0) == LOG_4PI2_OVER_5
    assert LOG_4PI2_OVER_5 == pytest.approx(2.0663162, abs=1e-7)
    r = subsequence_at_convergents(LOGSIN, GOLDEN, 20, n_min=20)[0]
    assert abs(predict_Sqn_limit(build_h_n(LOGSIN, GOLDEN, 20).one_minus) - r.S_q) < 5e-3


def test_gamma_zero():
    g = build_gamma(StepFunction(np.zeros(40)), GOLDEN)
    assert not g.direct.vals.any() and g.series is None


def test_gamma_forms_agree(golden_f):
    h = build_h_n(LOGSIN, GOLDEN, 24)
    g = build_gamma(h, GOLDEN, 40, beta=build_beta_n(golden_f(24), GOLDEN))
    assert np.max(np.abs(g.direct.vals - g.series.vals)) < THRESHOLDS["gamma_forms_sup"]
    assert monotonicity_violation(g.direct) < THRESHOLDS["gamma_monotone_violation_n24"]


def test_limit_estimate():
    est = limit_estimate({18: 1.7569, 20: 1.75689})
    assert est.n_used == 20 and est.cauchy_gap == pytest.approx(1e-5)
    assert math.isinf(limit_estimate({5: 1.0}).cauchy_gap)


def test_step_csv_with_sidecar(tmp_path, golden_f):
    f = golden_f(8)
    f.to_csv(tmp_path / "f.csv")
    lines = (tmp_path / "f.csv").read_text().splitlines()
    assert lines[0] == "x_left,value" and len(lines) == f.q + 1
    meta = json.loads((tmp_path / "f.csv.json").read_text())
    assert meta["q"] == convergent(GOLDEN, 8).q and meta["n"] == 8
