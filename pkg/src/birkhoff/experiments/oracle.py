"""Reference computations that fix the probe tolerances.

``run_oracle`` evaluates the engines against brute-force 256-bit sums and
sweeps the renormalization probes over n = 18..25.  The raw numbers and the
frozen tolerances go to a provenance file; the regression runner refuses to
start without one.
"""
from __future__ import annotations

import json
from functools import lru_cache
from math import gcd
from pathlib import Path
from typing import Dict, Iterable, List

import mpmath
import numpy as np

from ..complexprod import build_F_n
from ..errors import MissingProvenance
from ..distribution import fourier_coeffs, ratio_histogram, symmetry_defect
from ..observables import Observable
from ..renorm import (
    beta_selfsimilarity_report,
    build_beta_n,
    build_f_n,
    build_h_n,
    grid_gap,
    monotonicity_violation,
    x_envelope_ratio,
)
from ..rotations import GOLDEN, convergent
from ..sums import birkhoff_irrational, birkhoff_rational
from .thresholds import THRESHOLDS

DEFAULT_PROVENANCE = Path(__file__).resolve().parent.parent / "data" / "provenance.json"
SUITES = ("rational", "renorm", "distribution", "complex")


def brute_force_rational(p: int, q: int, K: int, prec: int = 256) -> List[float]:
    """S_1..S_K of 2 log|2 sin(pi j p/q)| summed in 256-bit floating point."""
    with mpmath.workprec(prec):
        total = mpmath.mpf(0)
        out = []
        for j in range(1, K + 1):
            total += 2 * mpmath.log(2 * abs(mpmath.sin(mpmath.pi * ((j * p) % q) / q)))
            out.append(float(total))
    return out


def _rational_suite() -> dict:
    obs = Observable.logsin()
    worst, cases = 0.0, 0
    for q in range(2, 201):
        for p in sorted({1, q - 1, q // 2, (2 * q) // 3}):
            if 0 < p < q and gcd(p, q) == 1:
                ref = np.array(brute_force_rational(p, q, q - 1))
                got = birkhoff_rational(obs, p, q, q - 1).values
                worst = max(worst, float(np.max(np.abs(ref - got))))
                cases += 1
    return {"cases": cases, "max_abs_gap_q_le_200": worst}


@lru_cache(maxsize=None)
def _f(n: int):
    return build_f_n(Observable.logsin(), GOLDEN, n)


def _renorm_suite(ns: Iterable[int] = range(18, 26)) -> dict:
    ns = list(ns)
    rows = {}
    for n in ns:
        f = _f(n)
        beta = build_beta_n(f, GOLDEN)
        rep = beta_selfsimilarity_report(beta, GOLDEN)
        row = {
            "q_n": f.q,
            "beta_one_minus": beta.one_minus,
            "beta_violation": monotonicity_violation(beta),
            "x_envelope_ratio": x_envelope_ratio(f),
            "selfsim_lower_sup_rel": rep.sup_lower / rep.c,
            "selfsim_upper_sup_rel": rep.sup_upper / rep.c,
        }
        if n + 1 in ns:
            gap = grid_gap(f, _f(n + 1))
            row["f_cauchy_median"] = float(np.median(gap))
            row["f_cauchy_p90"] = float(np.percentile(gap, 90))
            row["f_cauchy_sup"] = float(gap.max())
        if n in (20, 24):
            row["h_one_minus"] = build_h_n(Observable.logsin(), GOLDEN, n).one_minus
        rows[str(n)] = row
    _f.cache_clear()
    return {"golden_logsin": rows}


def _distribution_suite() -> dict:
    obs = Observable.logsin()
    q_hi = convergent(GOLDEN, 24).q
    S = birkhoff_irrational(obs, GOLDEN, q_hi).values
    out = {}
    for n in range(18, 25):
        q = convergent(GOLDEN, n).q
        h = ratio_histogram(S, q)
        out[str(n)] = {"q_n": q, "symmetry_defect": symmetry_defect(h),
                       "out_of_range_fraction": h.out_of_range / h.total}
    gaps = {}
    q20 = convergent(GOLDEN, 20).q
    for norm in ("logqn", "logk"):
        a = fourier_coeffs(S, q20, 32, norm).coeffs
        b = fourier_coeffs(S, q_hi, 32, norm).coeffs
        gaps[norm] = float(np.max(np.abs(a - b)))
    return {"histogram": out, "fourier_gap_20_24": gaps}


def _complex_suite() -> dict:
    rows = {}
    for n in range(13, 20):
        F = build_F_n(GOLDEN, n, index_offset=1)
        G = build_F_n(GOLDEN, n + 1, index_offset=1)
        imag = F.vals.imag
        rows[str(n)] = {
            "upper_fraction": float(np.mean(imag >= 0)),
            "lower_fraction": float(np.mean(imag <= 0)),
            "conj_gap_median": float(np.median(np.abs(F.sample() - np.conj(G.sample())))),
        }
    return {"F_n_fibonacci_labels": rows}


_RUNNERS = {
    "rational": _rational_suite,
    "renorm": _renorm_suite,
    "distribution": _distribution_suite,
    "complex": _complex_suite,
}


def run_oracle(suites: Iterable[str] = SUITES, path=DEFAULT_PROVENANCE) -> Path:
    suites = list(suites)
    unknown = set(suites) - set(_RUNNERS)
    if unknown:
        raise ValueError(f"unknown oracle suites {sorted(unknown)}; choose from {SUITES}")
    results: Dict[str, dict] = {name: _RUNNERS[name]() for name in suites}
    payload = {"suites": results, "thresholds": THRESHOLDS if results else {}}
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    return path


def load_provenance(path=DEFAULT_PROVENANCE) -> dict:
    path = Path(path)
    if not path.exists():
        raise MissingProvenance(f"no provenance file at {path}; run `birkhoff oracle` first")
    data = json.loads(path.read_text())
    if not data.get("suites"):
        raise MissingProvenance(f"provenance file {path} holds no oracle results")
    return data
