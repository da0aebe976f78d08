"""Empirical law of S_k / log k: histograms, symmetry and Fourier coefficients."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyHistogram, NonZeroMean
from .sums import SumTrace

LOG_K = "logk"
LOG_QN = "logqn"


@dataclass(eq=False)
class Histogram:
    lo: float
    hi: float
    bins: int
    counts: np.ndarray
    total: int
    out_of_range: int

    @property
    def width(self) -> float:
        return (self.hi - self.lo) / self.bins

    @property
    def centers(self) -> np.ndarray:
        return self.lo + (np.arange(self.bins) + 0.5) * self.width

    def density(self) -> np.ndarray:
        """Counts per unit length, normalized by all samples (in range or not)."""
        return self.counts / (self.total * self.width)

    def to_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("bin_center,normalized_density\n")
            for c, d in zip(self.centers.tolist(), self.density().tolist()):
                fh.write(f"{c:.17g},{d:.17g}\n")


def _values(source) -> np.ndarray:
    if isinstance(source, SumTrace):
        if abs(source.obs.mean) > 1e-12:
            raise NonZeroMean(
                f"{source.obs.label()} has mean {source.obs.mean}; S_k/log k diverges")
        return source.values
    return np.asarray(source, dtype=float)


def ratio_histogram(source, K: int | None = None, bins: int = 200, lo: float = 0.0,
                    hi: float = 2.0) -> Histogram:
    """Histogram of S_k/log k for 2 <= k <= K, each k weighted equally."""
    if bins < 1 or not hi > lo:
        raise ValueError("need bins >= 1 and hi > lo")
    S = _values(source)
    K = len(S) if K is None else K
    if K < 2 or K > len(S):
        raise ValueError(f"K={K} outside 2..{len(S)}")
    ratios = S[1:K] / np.log(np.arange(2, K + 1))
    idx = np.floor((ratios - lo) / (hi - lo) * bins).astype(np.int64)
    inside = (idx >= 0) & (idx < bins)
    counts = np.bincount(idx[inside], minlength=bins)
    return Histogram(lo, hi, bins, counts, len(ratios), int(np.count_nonzero(~inside)))


def symmetry_defect(hist: Histogram) -> float:
    """L1 distance between the normalized histogram and its mirror image."""
    if hist.bins % 2:
        raise ValueError("symmetry defect needs an even number of bins")
    mass = hist.counts.sum()
    if mass == 0:
        raise EmptyHistogram("no samples inside the histogram range")
    p = hist.counts / mass
    return float(np.abs(p - p[::-1]).sum())


@dataclass(eq=False)
class FourierCoeffs:
    m_max: int
    coeffs: np.ndarray
    normalization: str

    def to_csv(self, path) -> None:
        with open(path, "w") as fh:
            fh.write("m,Re,Im,modulus\n")
            for m, z in enumerate(self.coeffs.tolist()):
                fh.write(f"{m},{z.real:.17g},{z.imag:.17g},{abs(z):.17g}\n")


def fourier_coeffs(source, q: int, m_max: int, normalization: str = LOG_QN) -> FourierCoeffs:
    """(1/q) sum_{k=1}^{q} exp(i m S_k / den) for m = 0..m_max.

    den is log q, or log k with the k = 1 term borrowing log 2.
    """
    if m_max < 0 or q < 2:
        raise ValueError("need m_max >= 0 and q >= 2")
    S = _values(source)[:q]
    if len(S) < q:
        raise ValueError(f"need {q} sums, got {len(S)}")
    if normalization == LOG_QN:
        den = np.full(q, np.log(q))
    elif normalization == LOG_K:
        den = np.log(np.maximum(np.arange(1, q + 1), 2))
    else:
        raise ValueError(f"unknown normalization {normalization!r}")
    t = S / den
    coeffs = np.array([np.mean(np.exp(1j * m * t)) for m in range(m_max + 1)])
    return FourierCoeffs(m_max, coeffs, normalization)
