"""Golden-value regression store.

Every record names one number, where its expected value comes from
(PAPER, TRIVIAL or DERIVED with the oracle that produced it), and how the
computed value is compared.
"""
from __future__ import annotations

import json
import math
from collections import Counter
from dataclasses import asdict, dataclass, replace
from fractions import Fraction
from functools import lru_cache
from typing import Callable, List, Optional, Sequence

import numpy as np

from ..complexprod import c2_orbit_check, polygon_diagonal_product, product_P
from ..distribution import ratio_histogram, symmetry_defect
from ..observables import Observable
from ..renorm import (
    LOG_4PI2_OVER_5,
    build_beta_n,
    build_f_n,
    build_h_n,
    estimate_h_from_f,
    grid_gap,
    monotonicity_violation,
    predict_Sqn_limit,
)
from ..rotations import GOLDEN, convergent
from ..sums import birkhoff_irrational, birkhoff_rational, ratio_extremes
from .oracle import DEFAULT_PROVENANCE, load_provenance
from .thresholds import THRESHOLDS

PAPER, TRIVIAL, DERIVED = "PAPER", "TRIVIAL", "DERIVED"
HECKE_C = math.pi / math.sqrt(5)


@dataclass
class GoldenRecord:
    """``compare`` is "abs" (|actual - expected| <= tolerance) or "upper" (actual <= expected)."""

    id: str
    expected: float
    tolerance: float
    provenance: str
    description: str
    compare: str = "abs"
    actual: Optional[float] = None
    passed: Optional[bool] = None

    def evaluate(self, actual: float) -> "GoldenRecord":
        if self.compare == "abs":
            ok = abs(actual - self.expected) <= self.tolerance
        elif self.compare == "upper":
            ok = actual <= self.expected
        else:
            raise ValueError(f"unknown comparison {self.compare!r}")
        return replace(self, actual=float(actual), passed=bool(ok))


@dataclass
class RecordCheck:
    record: GoldenRecord
    compute: Callable[[], float]


LOGSIN = Observable.logsin()


@lru_cache(maxsize=None)
def _trace(n: int) -> np.ndarray:
    return birkhoff_irrational(LOGSIN, GOLDEN, convergent(GOLDEN, n).q).values


@lru_cache(maxsize=None)
def _f(n: int):
    return build_f_n(LOGSIN, GOLDEN, n)


def _q(n: int) -> int:
    return convergent(GOLDEN, n).q


def _diag_identity_error() -> float:
    worst, n = 0.0, 2
    while _q(n) <= 10 ** 5:
        c = convergent(GOLDEN, n)
        S = birkhoff_rational(LOGSIN, c.p, c.q, c.q - 1).values[-1]
        worst = max(worst, abs(S - 2 * math.log(c.q)))
        n += 1
    return worst


def _hecke_sup(n: int, sign: float) -> float:
    h = build_h_n(Observable.hecke(scale=2 * math.pi), GOLDEN, n, index_offset=1)
    x = np.arange(h.q) / h.q
    return float(np.max(np.abs(h.vals - sign * HECKE_C * x ** 2)))


def _duality_gap(n: int) -> float:
    q = _q(n)
    return abs(2 * product_P(GOLDEN, q).log_abs - _trace(n)[q - 1])


def default_records() -> List[RecordCheck]:
    T = THRESHOLDS
    q20 = _q(20)
    return [
        RecordCheck(GoldenRecord("diag_identity_fib_q_le_1e5", 0.0, 1e-9, PAPER,
                                "max |S_{q-1}(p/q) - 2 log q| over golden convergents q <= 1e5"),
                   _diag_identity_error),
        RecordCheck(GoldenRecord("S_qn_limit_n20", 1.75687, 5e-3, PAPER, "S_{q_20}(alpha)"),
                   lambda: _trace(20)[q20 - 1]),
        RecordCheck(GoldenRecord("S_qn_cauchy_18_20", 5e-3, 0.0, DERIVED,
                                "|S_{q_20} - S_{q_18}| (acceptance bound)", "upper"),
                   lambda: abs(_trace(20)[q20 - 1] - _trace(20)[_q(18) - 1])),
        RecordCheck(GoldenRecord("X_qn_plus_2logq_n20", 2.06632, 1e-3, PAPER,
                                "X_{q_20} + 2 log q_20 -> log(4 pi^2/5)"),
                   lambda: _trace(20)[q20 - 1] - _trace(20)[q20 - 2] + 2 * math.log(q20)),
        RecordCheck(GoldenRecord("S_qn_minus_1_ratio_n20", 2.0, 0.05, PAPER,
                                "S_{q_20 - 1}/log q_20"),
                   lambda: _trace(20)[q20 - 2] / math.log(q20)),
        RecordCheck(GoldenRecord("ratio_max_k_le_q20", 1.975, 0.075, DERIVED,
                                "max_{2<=k<=q_20} S_k/log k in [1.9, 2.05] (acceptance window)"),
                   lambda: ratio_extremes(_trace(20))[0]),
        RecordCheck(GoldenRecord("ratio_min_k_le_q20", 0.025, 0.075, DERIVED,
                                "min_{2<=k<=q_20} S_k/log k in [-0.05, 0.1] (acceptance window)"),
                   lambda: ratio_extremes(_trace(20))[2]),
        RecordCheck(GoldenRecord("h_one_minus_n24", -0.30945, 2e-3, PAPER, "h_24(1-)"),
                   lambda: build_h_n(LOGSIN, GOLDEN, 24).one_minus),
        RecordCheck(GoldenRecord("h_series_vs_h_n24", T["h_series_vs_h_sup"], 0.0, DERIVED,
                                "sup |sum_j f_24(alpha^j x) - h_24(x)|, j <= 40", "upper"),
                   lambda: float(np.max(np.abs(estimate_h_from_f(_f(24), GOLDEN, 40).vals
                                               - build_h_n(LOGSIN, GOLDEN, 24).vals)))),
        RecordCheck(GoldenRecord("beta_one_minus_n24", 0.104, 5e-3, PAPER, "beta_24(1-)"),
                   lambda: build_beta_n(_f(24), GOLDEN).one_minus),
        RecordCheck(GoldenRecord("beta_monotone_violation_n24", T["beta_monotone_violation_n24"], 0.0,
                                DERIVED, "fraction of adjacent-cell drops > 1e-3 in beta_24", "upper"),
                   lambda: monotonicity_violation(build_beta_n(_f(24), GOLDEN))),
        RecordCheck(GoldenRecord("f_cauchy_median_n24", T["f_cauchy_median_n24"], 0.0, DERIVED,
                                "median grid gap |f_24 - f_25|", "upper"),
                   lambda: float(np.median(grid_gap(_f(24), _f(25))))),
        RecordCheck(GoldenRecord("hecke_even_n16", 0.01, 0.0, PAPER,
                                "sup |h_16 + (pi/sqrt5) x^2|, Fibonacci labels, radian sawtooth", "upper"),
                   lambda: _hecke_sup(16, -1.0)),
        RecordCheck(GoldenRecord("hecke_odd_n17", 0.01, 0.0, PAPER,
                                "sup |h_17 - (pi/sqrt5) x^2|, Fibonacci labels, radian sawtooth", "upper"),
                   lambda: _hecke_sup(17, 1.0)),
        RecordCheck(GoldenRecord("hist_out_of_range_q24", 0.005, 0.0, PAPER,
                                "out-of-range mass of S_k/log k on [0, 2], K = q_24", "upper"),
                   lambda: (lambda h: h.out_of_range / h.total)(ratio_histogram(_trace(24)))),
        RecordCheck(GoldenRecord("symmetry_defect_q24", 0.15, 0.0, DERIVED,
                                "L1 mirror defect of the 200-bin histogram, K = q_24 (acceptance bound)",
                                "upper"),
                   lambda: symmetry_defect(ratio_histogram(_trace(24)))),
        RecordCheck(GoldenRecord("predict_S_qn_limit", 1.75687, 1e-5, PAPER,
                                "log(4 pi^2/5) + h(1-) at h(1-) = -0.30945"),
                   lambda: predict_Sqn_limit(-0.30945)),
        RecordCheck(GoldenRecord("log_4pi2_over_5", 2.06632, 1e-5, PAPER, "log(4 pi^2/5)"),
                   lambda: LOG_4PI2_OVER_5),
        RecordCheck(GoldenRecord("duality_q20", 1e-8, 0.0, DERIVED, "|2 log|P_{q_20}| - S_{q_20}|", "upper"),
                   lambda: _duality_gap(20)),
        RecordCheck(GoldenRecord("polygon_q5", 5.0, 1e-10, PAPER, "product of diagonals of the 5-gon"),
                   lambda: polygon_diagonal_product(5)),
        RecordCheck(GoldenRecord("polygon_q10946_rel", 1e-7, 0.0, DERIVED,
                                "relative error of the 10946-gon diagonal product", "upper"),
                   lambda: abs(polygon_diagonal_product(10946) / 10946 - 1)),
        RecordCheck(GoldenRecord("polygon_via_P_8_13", 13.0, 1e-10, PAPER, "|P_12(8/13)|"),
                   lambda: product_P(Fraction(8, 13), 12).modulus),
        RecordCheck(GoldenRecord("c2_orbit_q20", 1e-7, 0.0, DERIVED, "max |log|w_n| - S_n/2|, n <= q_20",
                                "upper"),
                   lambda: c2_orbit_check(q20)),
        RecordCheck(GoldenRecord("golden_q6", 13.0, 0.0, TRIVIAL, "q_6 of the golden mean"),
                   lambda: float(_q(6))),
    ]


@dataclass
class RegressionReport:
    records: List[GoldenRecord]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    @property
    def failures(self) -> List[GoldenRecord]:
        return [r for r in self.records if not r.passed]

    def counts_by_provenance(self) -> dict:
        total = Counter(r.provenance for r in self.records)
        ok = Counter(r.provenance for r in self.records if r.passed)
        return {tag: {"total": total[tag], "passed": ok[tag]} for tag in sorted(total)}

    def to_dict(self) -> dict:
        return {"passed": self.passed, "counts": self.counts_by_provenance(),
                "records": [asdict(r) for r in self.records]}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


def run_regression(provenance=DEFAULT_PROVENANCE,
                   checks: Optional[Sequence[RecordCheck]] = None) -> RegressionReport:
    load_provenance(provenance)
    checks = default_records() if checks is None else checks
    ids = [s.record.id for s in checks]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate record ids")
    return RegressionReport([s.record.evaluate(s.compute()) for s in checks])
