"""Products prod (1 - e^{2 pi i k alpha}) whose log-moduli are half the Birkhoff sums.

Products are carried as (log-modulus, phase) pairs.  The modulus is summed
from log|1 - e^{2 pi i u}| evaluated through the complex exponential, a route
independent of the sin formula used for g.  For an angle theta in (0, 1) the
factor has argument pi (theta - 1/2), so phases reduce to integer sums of
residues (or fixed-point fractions) and are exact modulo 2 pi.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from .errors import SingularHit, ZeroBase
from .observables import Observable
from .rotations import (
    GOLDEN,
    HALF,
    ONE,
    CirclePoint,
    RotationNumber,
    convergent,
    orbit_fracs,
    rational_residues,
    reduced_angles,
)
from .summation import CompensatedSum, compensated_cumsum
from .sums import birkhoff_irrational


def log_abs_factor(u) -> np.ndarray:
    """log|1 - e^{2 pi i u}| via expm1 of the complex angle."""
    with np.errstate(divide="ignore"):
        return np.log(np.abs(np.expm1(2j * np.pi * np.asarray(u, dtype=float))))


def _wrap_phase(num: int, den: int) -> float:
    """pi * num/den reduced to (-pi, pi], with num/den taken mod 2 exactly."""
    r = Fraction(num, den) % 2
    if r > 1:
        r -= 2
    return math.pi * float(r)


@dataclass(frozen=True)
class PolarProduct:
    log_abs: float
    arg: float

    @property
    def modulus(self) -> float:
        return math.exp(self.log_abs)

    def to_complex(self) -> complex:
        return cmath.rect(self.modulus, self.arg)


def product_P(source: Union[RotationNumber, Fraction, Tuple[int, int]], K: int,
              x0: Optional[CirclePoint] = None) -> PolarProduct:
    """prod_{k=1}^{K} (1 - e^{2 pi i (x0 + k alpha)}) at a rational or irrational angle."""
    if isinstance(source, RotationNumber):
        fracs = orbit_fracs(source, 1, K, x0)
        for j, v in enumerate(fracs, start=1):
            if v == 0:
                raise SingularHit(j)
        acc = CompensatedSum()
        for block in range(0, K, 1 << 16):
            for x in log_abs_factor(reduced_angles(fracs[block:block + (1 << 16)])).tolist():
                acc.add(x)
        arg = _wrap_phase(sum(fracs) - K * HALF, ONE)
        return PolarProduct(acc.value, arg)
    fr = Fraction(*source) if isinstance(source, tuple) else Fraction(source)
    p, q = fr.numerator, fr.denominator
    r = rational_residues(p, q, 1, K)
    zero = np.flatnonzero(r == 0)
    if len(zero):
        raise SingularHit(int(zero[0]) + 1)
    rf = r.astype(float)
    u = np.where(rf > q / 2, rf - q, rf) / q
    acc = CompensatedSum()
    for x in log_abs_factor(u).tolist():
        acc.add(x)
    total = int(sum(int(v) for v in r)) if r.dtype == object else int(r.sum())
    return PolarProduct(acc.value, _wrap_phase(2 * total - K * q, 2 * q))


@dataclass(eq=False)
class ComplexStepFunction:
    log_abs: np.ndarray
    arg: np.ndarray
    meta: Dict = field(default_factory=dict)

    @property
    def q(self) -> int:
        return len(self.log_abs)

    @property
    def vals(self) -> np.ndarray:
        return np.exp(self.log_abs + 1j * self.arg)

    def _index(self, x) -> np.ndarray:
        idx = np.floor(np.asarray(x, dtype=float) * self.q).astype(np.int64)
        return np.clip(idx, 0, self.q - 1)

    def __call__(self, x) -> np.ndarray:
        return self.vals[self._index(x)]

    def sample(self, N: int = 1000) -> np.ndarray:
        return self((np.arange(N) + 0.5) / N)

    def to_csv(self, path) -> None:
        v = self.vals
        with open(path, "w") as fh:
            fh.write("x_left,Re,Im\n")
            for k, z in enumerate(v.tolist()):
                fh.write(f"{k / self.q:.17g},{z.real:.17g},{z.imag:.17g}\n")


def _residue_cumsum(p: int, q: int, count: int) -> List[int]:
    r = rational_residues(p, q, 1, count)
    out, s = [0], 0
    for v in r.tolist():
        s += int(v)
        out.append(s)
    return out


def build_F_n(rot: RotationNumber, n: int, index_offset: int = 0) -> ComplexStepFunction:
    """F_n(x) = prod_{k<=[x q_n]} (1 - w'^k)/(1 - w^k), w = e^{2 pi i p_n/q_n}, w' at n+1."""
    c = convergent(rot, n, index_offset)
    c1 = convergent(rot, n + 1, index_offset)
    K = c.q - 1

    def terms(p, q):
        r = rational_residues(p, q, 1, K).astype(float)
        return log_abs_factor(np.where(r > q / 2, r - q, r) / q)

    log_abs = np.concatenate(([0.0], compensated_cumsum(terms(c1.p, c1.q) - terms(c.p, c.q))))
    A = _residue_cumsum(c1.p, c1.q, K)
    B = _residue_cumsum(c.p, c.q, K)
    den = c.q * c1.q
    # sum_j pi({j p'/q'} - {j p/q}); the -1/2 offsets cancel between numerator and denominator
    arg = np.array([_wrap_phase(a * c.q - b * c1.q, den) for a, b in zip(A, B)])
    meta = {"kind": "F", "rotation": rot.as_dict(), "n": n, "index_offset": index_offset, "q_n": c.q}
    return ComplexStepFunction(log_abs, arg, meta)


def build_B_n(F: ComplexStepFunction, rot: RotationNumber) -> ComplexStepFunction:
    """B_n(x) = F_n(alpha x) * F_n(x)^{alpha^2}, principal branch for the power."""
    if np.any(np.isneginf(F.log_abs)):
        raise ZeroBase("F_n vanishes at a needed cell")
    alpha = rot.value
    a2 = alpha * alpha
    mid = (np.arange(F.q) + 0.5) / F.q
    idx = F._index(alpha * mid)
    log_abs = F.log_abs[idx] + a2 * F.log_abs
    arg = np.angle(np.exp(1j * (F.arg[idx] + a2 * F.arg)))
    return ComplexStepFunction(log_abs, arg, dict(F.meta, kind="B"))


def polygon_log_product(q: int) -> float:
    """log prod_{j=1}^{q-1} |1 - e^{2 pi i j/q}|, using the j <-> q-j symmetry."""
    if q < 2:
        raise ValueError("q must be >= 2")
    j = np.arange(1, (q - 1) // 2 + 1)
    total = 2.0 * float(np.sum(np.log(2.0 * np.sin(np.pi * j / q))))
    if q % 2 == 0:
        total += math.log(2.0)
    return total


def polygon_diagonal_product(q: int) -> float:
    return math.exp(polygon_log_product(q))


def polygon_table(rot: RotationNumber, n_max: int, index_offset: int = 0) -> List[Tuple[int, float, int]]:
    """Rows (n, |P_{q_n - 1}(p_n/q_n)|, q_n) for n = 1..n_max with q_n >= 2."""
    rows = []
    for n in range(1, n_max + 1):
        c = convergent(rot, n, index_offset)
        if c.q >= 2:
            rows.append((n, product_P(Fraction(c.p, c.q), c.q - 1).modulus, c.q))
    return rows


def c2_orbit_check(K: int, rot: RotationNumber = GOLDEN) -> float:
    """Iterate T(z, w) = (c z, w (1 - z)) from (c, 1) and compare log|w_n| with S_n/2."""
    c = cmath.exp(2j * math.pi * rot.value)
    z = c
    acc = CompensatedSum()
    logw = []
    for _ in range(K):
        acc.add(math.log(abs(1 - z)))
        z = c * z
        logw.append(acc.value)
    S = birkhoff_irrational(Observable.logsin(), rot, K).values
    return float(np.max(np.abs(np.array(logw) - S / 2)))
