"""Birkhoff sums S_k = sum_{j<=k} g(x0 + j*alpha) at rational and irrational angles."""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterator, List, Optional

import numpy as np

from .errors import SingularHit
from .observables import Observable
from .rotations import (
    FRAC_BITS,
    ONE,
    CirclePoint,
    RotationNumber,
    convergent,
    orbit_fracs,
    rational_residues,
    reduced_angles,
)
from .summation import CompensatedSum, cumsum

CHUNK = 1 << 16
# iterates closer than 2**-100 to a singularity are treated as hits
_SINGULAR_GUARD = 1 << (FRAC_BITS - 100)
# largest trace held in memory at once; iter_birkhoff_irrational streams past it
MAX_TERMS = 50_000_000


@dataclass(eq=False)
class SumTrace:
    """S_1..S_K with the data needed to reproduce them."""

    rotation: object  # RotationNumber or Fraction
    obs: Observable
    x0: object
    values: np.ndarray

    @property
    def K(self) -> int:
        return len(self.values)

    def S(self, k: int) -> float:
        return 0.0 if k == 0 else float(self.values[k - 1])

    def ratios(self) -> np.ndarray:
        """S_k / log k for k = 2..K."""
        k = np.arange(2, self.K + 1)
        return self.values[1:] / np.log(k)

    def metadata(self) -> dict:
        if isinstance(self.rotation, RotationNumber):
            rot = {"kind": "irrational", **self.rotation.as_dict()}
        else:
            fr = Fraction(self.rotation)
            rot = {"kind": "rational", "p": fr.numerator, "q": fr.denominator}
        if isinstance(self.x0, CirclePoint):
            x0 = {"frac": str(self.x0.frac), "bits": FRAC_BITS}
        else:
            x0 = {"num": int(self.x0), "den": Fraction(self.rotation).denominator}
        return {"rotation": rot, "observable": self.obs.label(), "x0": x0, "K": self.K}

    def to_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("# " + json.dumps(self.metadata(), sort_keys=True) + "\n")
            fh.write("k,S_k,S_k/log(k)\n")
            for k, s in enumerate(self.values.tolist(), start=1):
                ratio = "" if k == 1 else f"{s / math.log(k):.17g}"
                fh.write(f"{k},{s:.17g},{ratio}\n")


def _check_size(K: int) -> None:
    if K > MAX_TERMS:
        raise ValueError(f"K = {K} exceeds MAX_TERMS = {MAX_TERMS}; lower n "
                         "or stream with iter_birkhoff_irrational")


def _check_finite(terms: np.ndarray, first_index: int) -> None:
    bad = np.flatnonzero(~np.isfinite(terms))
    if len(bad):
        raise SingularHit(first_index + int(bad[0]))


def rational_terms(obs: Observable, p: int, q: int, start: int, count: int, x0_num: int = 0) -> np.ndarray:
    """g((x0_num + j p)/q) for j = start .. start+count-1, singular hits raised."""
    r = rational_residues(p, q, start, count, x0_num)
    for s in obs.singular_points:
        target = s * q
        if target.denominator == 1:
            hits = np.flatnonzero(r == int(target) % q)
            if len(hits):
                raise SingularHit(start + int(hits[0]))
    r = r.astype(float) if r.dtype != object else np.array([float(v) for v in r])
    u = np.where(r > q / 2, r - q, r) / q
    terms = obs.values(u)
    _check_finite(terms, start)
    return terms


def birkhoff_rational(obs: Observable, p: int, q: int, K: int, x0_num: int = 0,
                      method: str = "compensated") -> SumTrace:
    if gcd(p, q) != 1:
        raise ValueError("p and q must be coprime")
    if K < 0:
        raise ValueError("K must be >= 0")
    _check_size(K)
    terms = rational_terms(obs, p, q, 1, K, x0_num)
    return SumTrace(Fraction(p, q), obs, x0_num, cumsum(terms, method))


def rational_prefix(obs: Observable, p: int, q: int, K: int) -> np.ndarray:
    """S_0..S_K at p/q from x0 = 0 (S_0 = 0 prepended)."""
    return np.concatenate(([0.0], birkhoff_rational(obs, p, q, K).values))


def irrational_terms(obs: Observable, rot: RotationNumber, start: int, count: int,
                     x0: Optional[CirclePoint] = None) -> np.ndarray:
    fracs = orbit_fracs(rot, start, count, x0)
    for s in obs.singular_points:
        target = (s.numerator * ONE) // s.denominator
        for i, v in enumerate(fracs):
            dist = (v - target) & (ONE - 1)
            if min(dist, ONE - dist) < _SINGULAR_GUARD:
                raise SingularHit(start + i)
    terms = obs.values(reduced_angles(fracs))
    _check_finite(terms, start)
    return terms


def iter_birkhoff_irrational(obs: Observable, rot: RotationNumber, K: int,
                             x0: Optional[CirclePoint] = None, chunk: int = CHUNK,
                             method: str = "compensated") -> Iterator[np.ndarray]:
    """Yield consecutive blocks of S_1..S_K; only one block is held at a time."""
    if method == "compensated":
        acc = CompensatedSum()
        for start in range(1, K + 1, chunk):
            count = min(chunk, K + 1 - start)
            yield acc.cumulative(irrational_terms(obs, rot, start, count, x0))
    else:
        offset = 0.0
        for start in range(1, K + 1, chunk):
            count = min(chunk, K + 1 - start)
            block = cumsum(irrational_terms(obs, rot, start, count, x0), method) + offset
            offset = float(block[-1])
            yield block


def birkhoff_irrational(obs: Observable, rot: RotationNumber, K: int,
                        x0: Optional[CirclePoint] = None, method: str = "compensated") -> SumTrace:
    if K < 1:
        raise ValueError("K must be >= 1")
    _check_size(K)
    blocks = list(iter_birkhoff_irrational(obs, rot, K, x0, method=method))
    return SumTrace(rot, obs, x0 or CirclePoint(0), np.concatenate(blocks))


def irrational_prefix(obs: Observable, rot: RotationNumber, K: int,
                      x0: Optional[CirclePoint] = None) -> np.ndarray:
    """S_0..S_K at alpha (S_0 = 0 prepended)."""
    if K == 0:
        return np.zeros(1)
    return np.concatenate(([0.0], birkhoff_irrational(obs, rot, K, x0).values))


@dataclass(frozen=True)
class ConvergentSums:
    n: int
    q: int
    S_q: float
    S_q_minus_1: float

    @property
    def X_q(self) -> float:
        return self.S_q - self.S_q_minus_1


def subsequence_at_convergents(obs: Observable, rot: RotationNumber, n_max: int,
                               x0: Optional[CirclePoint] = None, index_offset: int = 0,
                               n_min: int = 1) -> List[ConvergentSums]:
    """S_{q_n} and S_{q_n - 1} for n = n_min..n_max, streamed."""
    convs = [convergent(rot, n, index_offset) for n in range(n_min, n_max + 1)]
    wanted = {}
    for c in convs:
        wanted.setdefault(c.q, []).append(c)
        wanted.setdefault(c.q - 1, [])
    found = {0: 0.0}
    K = convs[-1].q
    k = 0
    for block in iter_birkhoff_irrational(obs, rot, K, x0):
        lo = k + 1
        for target in wanted:
            if lo <= target <= k + len(block):
                found[target] = float(block[target - lo])
        k += len(block)
    return [ConvergentSums(c.n, c.q, found[c.q], found[c.q - 1]) for c in convs]


def ratio_extremes(values: np.ndarray, k_lo: int = 2, k_hi: Optional[int] = None):
    """(max, argmax k, min, argmin k) of S_k/log k over k_lo <= k <= k_hi."""
    k_hi = len(values) if k_hi is None else k_hi
    k = np.arange(k_lo, k_hi + 1)
    r = values[k_lo - 1:k_hi] / np.log(k)
    return float(r.max()), int(k[r.argmax()]), float(r.min()), int(k[r.argmin()])
