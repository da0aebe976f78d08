import math
from fractions import Fraction
from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from birkhoff import (
    GOLDEN,
    CirclePoint,
    Observable,
    SingularHit,
    birkhoff_irrational,
    birkhoff_rational,
    convergent,
    evaluate,
    subsequence_at_convergents,
)
from birkhoff.experiments.oracle import brute_force_rational
from birkhoff.rotations import ONE, orbit_fracs
from birkhoff.sums import ratio_extremes

LOGSIN = Observable.logsin()


def test_diagonal_identity_8_13():
    assert birkhoff_rational(LOGSIN, 8, 13, 12).values[-1] == pytest.approx(2 * math.log(13), abs=1e-12)


def test_single_term_half():
    assert birkhoff_rational(LOGSIN, 1, 2, 1).values[0] == pytest.approx(math.log(4), abs=1e-15)


def test_singular_hit_reports_index():
    with pytest.raises(SingularHit) as err:
        birkhoff_rational(LOGSIN, 8, 13, 13)
    assert err.value.index == 13


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 200), st.integers(1, 199))
def test_rational_engine_vs_256_bit(q, p):
    p = p % q or 1
    if gcd(p, q) != 1:
        return
    ref = np.array(brute_force_rational(p, q, q - 1))
    assert np.max(np.abs(birkhoff_rational(LOGSIN, p, q, q - 1).values - ref)) < 1e-12


def test_rational_offset():
    # x0 = 1/13 shifts the orbit so j = 12 hits 0
    with pytest.raises(SingularHit) as err:
        birkhoff_rational(LOGSIN, 1, 13, 12, x0_num=1)
    assert err.value.index == 12


def test_first_irrational_term():
    S = birkhoff_irrational(LOGSIN, GOLDEN, 1)
    assert S.values[0] == pytest.approx(evaluate(LOGSIN, GOLDEN.value), abs=1e-14)
    assert S.values[0] == pytest.approx(1.2455, abs=1e-4)


def test_increments_are_observable_values():
    S = birkhoff_irrational(LOGSIN, GOLDEN, 500).values
    inc = np.diff(np.concatenate(([0.0], S)))
    for k in (1, 2, 77, 233, 500):
        x = Fraction(orbit_fracs(GOLDEN, k, 1)[0], ONE)
        assert inc[k - 1] == pytest.approx(evaluate(LOGSIN, float(x)), abs=1e-11)


def test_determinism():
    K = convergent(GOLDEN, 18).q
    a = birkhoff_irrational(LOGSIN, GOLDEN, K).values
    b = birkhoff_irrational(LOGSIN, GOLDEN, K).values
    assert a.tobytes() == b.tobytes()


def test_blocked_path_agrees():
    K = convergent(GOLDEN, 20).q
    a = birkhoff_irrational(LOGSIN, GOLDEN, K).values
    b = birkhoff_irrational(LOGSIN, GOLDEN, K, method="blocked").values
    assert np.max(np.abs(a - b)) < 1e-10


def test_lower_envelope_q14():
    rows = subsequence_at_convergents(LOGSIN, GOLDEN, 14)
    assert abs(rows[-1].S_q - 1.75687) < 5e-3
    assert rows[-1].q == 610


def test_upper_envelope_q20():
    r = subsequence_at_convergents(LOGSIN, GOLDEN, 20, n_min=20)[0]
    assert abs(r.S_q_minus_1 / math.log(r.q) - 2) < 0.05
    assert abs(r.X_q + 2 * math.log(r.q) - 2.06632) < 1e-3


def test_subsequence_matches_full_trace():
    rows = subsequence_at_convergents(LOGSIN, GOLDEN, 16)
    S = birkhoff_irrational(LOGSIN, GOLDEN, rows[-1].q).values
    for r in rows:
        assert r.S_q == S[r.q - 1]
        if r.q > 1:
            assert r.S_q_minus_1 == S[r.q - 2]


def test_offset_changes_limit():
    x0 = CirclePoint.from_fraction(1, 2)
    r = subsequence_at_convergents(LOGSIN, GOLDEN, 14, x0=x0, n_min=14)[0]
    assert abs(r.S_q - 1.75687) > 0.1


def test_irrational_singular_offset():
    # x0 = -alpha puts the first iterate on the singularity
    x0 = CirclePoint((ONE - GOLDEN.fixed_point) % ONE)
    with pytest.raises(SingularHit):
        birkhoff_irrational(LOGSIN, GOLDEN, 3, x0=x0)


def test_hecke_parity_subsequences_converge():
    obs = Observable.hecke(scale=2 * math.pi)
    rows = subsequence_at_convergents(obs, GOLDEN, 20, n_min=8)
    for parity in (0, 1):
        vals = [r.S_q for r in rows if r.n % 2 == parity]
        gaps = np.abs(np.diff(vals))
        assert np.all(np.diff(gaps) < 0)
        assert gaps[-1] < 1e-3


def test_ratio_bounded_up_to_q20():
    S = birkhoff_irrational(LOGSIN, GOLDEN, convergent(GOLDEN, 20).q).values
    hi, k_hi, lo, _ = ratio_extremes(S)
    assert lo >= -0.05
    assert hi <= 2 + 0.05, f"max S_k/log k = {hi:.4f} at k = {k_hi}"


def test_ratio_extremes_on_toy():
    S = np.array([0.0, 1.0, 3.0, 0.5])
    hi, khi, lo, klo = ratio_extremes(S)
    assert khi == 3 and klo == 4
    assert hi == pytest.approx(3 / math.log(3))


def test_csv_header(tmp_path):
    tr = birkhoff_irrational(LOGSIN, GOLDEN, 5)
    path = tmp_path / "s.csv"
    tr.to_csv(path)
    lines = path.read_text().splitlines()
    assert lines[0].startswith("# {") and lines[1] == "k,S_k,S_k/log(k)"
    assert lines[2].endswith(",") and len(lines) == 7
    assert float(lines[3].split(",")[1]) == tr.values[1]


def test_oversized_trace_rejected():
    from birkhoff.sums import MAX_TERMS
    with pytest.raises(ValueError, match="MAX_TERMS"):
        birkhoff_irrational(LOGSIN, GOLDEN, MAX_TERMS + 1)
    with pytest.raises(ValueError, match="MAX_TERMS"):
        birkhoff_rational(LOGSIN, 1, MAX_TERMS + 7, MAX_TERMS + 1)
