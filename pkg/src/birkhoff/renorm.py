"""Rescaled step functions built from Birkhoff sums on the grid k/q_n.

A step function on q cells holds vals[k] = value on [k/q, (k+1)/q), so
evaluating at x reads vals[floor(x q)], the S_{[x q_n]} convention.  Rescaled
lookups such as f(alpha x) are taken at cell midpoints (k + 1/2)/q; left
endpoints land exactly on breakpoints and misalign whole cells at the jumps.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Dict, Mapping, Optional

import numpy as np

from .errors import DegenerateScaling, DimensionMismatch
from .observables import Observable
from .rotations import RotationNumber, convergent
from .sums import irrational_prefix, rational_prefix

LOG_4PI2_OVER_5 = math.log(4 * math.pi ** 2 / 5)


@dataclass(eq=False)
class StepFunction:
    vals: np.ndarray
    meta: Dict = field(default_factory=dict)

    @property
    def q(self) -> int:
        return len(self.vals)

    @property
    def one_minus(self) -> float:
        return float(self.vals[-1])

    @property
    def midpoints(self) -> np.ndarray:
        return (np.arange(self.q) + 0.5) / self.q

    def __call__(self, x) -> np.ndarray:
        idx = np.floor(np.asarray(x, dtype=float) * self.q).astype(np.int64)
        return self.vals[np.clip(idx, 0, self.q - 1)]

    def compose(self, s: float) -> np.ndarray:
        """f(s x) at this function's own cell midpoints."""
        return self(s * self.midpoints)

    def sample(self, N: int = 1000) -> np.ndarray:
        return self((np.arange(N) + 0.5) / N)

    def resample(self, q: int) -> "StepFunction":
        return StepFunction(self.sample(q), dict(self.meta, resampled_from=self.q))

    def to_csv(self, path, sidecar: bool = True) -> None:
        x_left = np.arange(self.q) / self.q
        with open(path, "w") as fh:
            fh.write("x_left,value\n")
            for x, v in zip(x_left.tolist(), self.vals.tolist()):
                fh.write(f"{x:.17g},{v:.17g}\n")
        if sidecar:
            with open(str(path) + ".json", "w") as fh:
                json.dump(dict(self.meta, q=self.q), fh, indent=2, sort_keys=True, default=str)


@dataclass(frozen=True)
class LimitEstimate:
    value: float
    n_used: int
    cauchy_gap: float


def limit_estimate(values_by_n: Mapping[int, float]) -> LimitEstimate:
    ns = sorted(values_by_n)
    n = ns[-1]
    gap = abs(values_by_n[n] - values_by_n[ns[-2]]) if len(ns) > 1 else math.inf
    return LimitEstimate(float(values_by_n[n]), n, gap)


def _meta(kind, obs, rot, n, index_offset, **extra):
    return {"kind": kind, "observable": obs.label(), "rotation": rot.as_dict(), "n": n,
            "index_offset": index_offset, **extra}


def build_f_nm(obs: Observable, rot: RotationNumber, n: int, m: int,
               index_offset: int = 0) -> StepFunction:
    """f_{n,m}(x) = S_{[x q_n]}(p_{n+m}/q_{n+m}) - S_{[x q_n]}(p_n/q_n)."""
    if m < 1:
        raise ValueError("m must be >= 1")
    c = convergent(rot, n, index_offset)
    cm = convergent(rot, n + m, index_offset)
    vals = rational_prefix(obs, cm.p, cm.q, c.q - 1) - rational_prefix(obs, c.p, c.q, c.q - 1)
    return StepFunction(vals, _meta("f", obs, rot, n, index_offset, m=m, q_n=c.q))


def build_f_n(obs: Observable, rot: RotationNumber, n: int, index_offset: int = 0) -> StepFunction:
    return build_f_nm(obs, rot, n, 1, index_offset)


def build_h_n(obs: Observable, rot: RotationNumber, n: int, index_offset: int = 0) -> StepFunction:
    """h_n(x) = S_{[x q_n]}(alpha) - S_{[x q_n]}(p_n/q_n)."""
    c = convergent(rot, n, index_offset)
    vals = irrational_prefix(obs, rot, c.q - 1) - rational_prefix(obs, c.p, c.q, c.q - 1)
    return StepFunction(vals, _meta("h", obs, rot, n, index_offset, q_n=c.q))


def build_s_n(obs: Observable, rot: RotationNumber, n: int, index_offset: int = 0) -> StepFunction:
    """s_n(x) = S_{[x q_n]}(alpha) / log [x q_n]; cells 0 and 1 are NaN."""
    c = convergent(rot, n, index_offset)
    S = irrational_prefix(obs, rot, c.q - 1)
    k = np.arange(c.q)
    with np.errstate(divide="ignore", invalid="ignore"):
        vals = np.where(k >= 2, S / np.log(np.maximum(k, 2)), np.nan)
    return StepFunction(vals, _meta("s", obs, rot, n, index_offset, q_n=c.q))


def build_beta_n(f: StepFunction, rot: RotationNumber) -> StepFunction:
    """beta(x) = f(alpha x) + alpha^2 f(x)."""
    alpha = rot.value
    return StepFunction(f.compose(alpha) + alpha * alpha * f.vals, dict(f.meta, kind="beta"))


def build_beta_periodic(f: StepFunction, f_tilde: StepFunction, p: int, q: int,
                        rot: RotationNumber) -> StepFunction:
    """beta(x) = q f(alpha x) + p alpha^2 f~(x) for alpha = [0; p, q, p, q, ...]."""
    if f.q != f_tilde.q:
        raise DimensionMismatch(f"f has {f.q} cells but f~ has {f_tilde.q}; resample first")
    alpha = rot.value
    vals = q * f.compose(alpha) + p * alpha * alpha * f_tilde.vals
    return StepFunction(vals, dict(f.meta, kind="beta_periodic", p=p, q_coef=q))


def monotonicity_violation(step: StepFunction, tol: float = 1e-3) -> float:
    """Fraction of adjacent cell pairs where the function drops by more than tol."""
    if step.q < 2:
        return 0.0
    return float(np.mean(np.diff(step.vals) < -tol))


def grid_gap(a: StepFunction, b: StepFunction, N: int = 1000) -> np.ndarray:
    return np.abs(a.sample(N) - b.sample(N))


def grid_correlation(a: StepFunction, b: StepFunction, N: int = 1000) -> float:
    return float(np.corrcoef(a.sample(N), b.sample(N))[0, 1])


def x_envelope_ratio(f: StepFunction) -> float:
    """max_k |f(k/q)| / (k/q) over k >= 1."""
    k = np.arange(1, f.q)
    if not len(k):
        return 0.0
    return float(np.max(np.abs(f.vals[1:]) / (k / f.q)))


@dataclass(frozen=True)
class SelfSimilarityReport:
    a: float
    b: float
    c: float
    sup_lower: float
    l1_lower: float
    sup_upper: float
    l1_upper: float


def beta_selfsimilarity_report(beta: StepFunction, rot: RotationNumber, N: int = 1000) -> SelfSimilarityReport:
    """Compare beta with its affine rescalings on [0, alpha] and [alpha, 1].

    beta_1(x) = beta(alpha x) c/a and beta_2(x) = (beta(alpha + (1-alpha) x) - b) c/(c - b)
    with a = beta(alpha-), b = beta(alpha+), c = beta(1-).  The one-sided values
    are read one cell away from the cell containing alpha.
    """
    alpha = rot.value
    ia = int(math.floor(alpha * beta.q))
    if ia < 1 or ia + 1 >= beta.q:
        raise DegenerateScaling("grid too coarse to separate beta(alpha-) from beta(alpha+)")
    a, b, c = float(beta.vals[ia - 1]), float(beta.vals[ia + 1]), beta.one_minus
    if abs(a) < 1e-12 or abs(c - b) < 1e-12:
        raise DegenerateScaling(f"a={a}, c-b={c - b}")
    x = (np.arange(N) + 0.5) / N
    ref = beta(x)
    r1 = np.abs(ref - beta(alpha * x) * c / a)
    r2 = np.abs(ref - (beta(alpha + (1 - alpha) * x) - b) * c / (c - b))
    return SelfSimilarityReport(a, b, c, float(r1.max()), float(r1.mean()),
                                float(r2.max()), float(r2.mean()))


def estimate_h_from_f(f: StepFunction, rot: RotationNumber, j_max: int, q: Optional[int] = None) -> StepFunction:
    """Partial series sum_{j=0}^{j_max} f(alpha^j x) on q cells (default f's grid).

    meta["tail_bound"] is alpha^{j_max+1}/(1-alpha), the tail under |f(x)| <= x.
    """
    if j_max < 1:
        raise ValueError("j_max must be >= 1")
    alpha = rot.value
    q = f.q if q is None else q
    x = (np.arange(q) + 0.5) / q
    vals = np.zeros(q)
    for j in range(j_max + 1):
        vals += f(alpha ** j * x)
    tail = alpha ** (j_max + 1) / (1 - alpha)
    return StepFunction(vals, dict(f.meta, kind="h_series", j_max=j_max, tail_bound=tail))


def h_series_conventions(obs: Observable, rot: RotationNumber, n: int, j_max: int,
                         index_offset: int = 0) -> Dict[str, StepFunction]:
    """The h-series on q_n cells built from f_n ("same") and from f_{n-1} ("previous")."""
    q = convergent(rot, n, index_offset).q
    return {
        "same": estimate_h_from_f(build_f_n(obs, rot, n, index_offset), rot, j_max),
        "previous": estimate_h_from_f(build_f_n(obs, rot, n - 1, index_offset), rot, j_max, q=q),
    }


def predict_Sqn_limit(h_one_minus: float) -> float:
    return LOG_4PI2_OVER_5 + h_one_minus


@dataclass(eq=False)
class GammaForms:
    direct: StepFunction
    series: Optional[StepFunction]


def build_gamma(h: StepFunction, rot: RotationNumber, j_max: int = 40,
                beta: Optional[StepFunction] = None) -> GammaForms:
    """gamma(x) = h(alpha x) + alpha^2 h(x), and optionally sum_{j>=0} beta(alpha^j x).

    Substituting h = sum_{j>=0} f(alpha^j x) shows the beta series must start at j = 0.
    """
    alpha = rot.value
    direct = StepFunction(h.compose(alpha) + alpha * alpha * h.vals, dict(h.meta, kind="gamma"))
    series = None
    if beta is not None:
        x = h.midpoints
        vals = np.zeros(h.q)
        for j in range(j_max + 1):
            vals += beta(alpha ** j * x)
        series = StepFunction(vals, dict(beta.meta, kind="gamma_series", j_max=j_max))
    return GammaForms(direct, series)
