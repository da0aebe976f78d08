"""Circle observables g with logarithmic singularities, plus Hecke's sawtooth.

Every observable is evaluated on *reduced* angles u in [-1/2, 1/2), the
representative of x mod 1 closest to 0.  Near the singularity at 0 this keeps
full relative precision, which matters because the orbit comes within
~1/q_n of it.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Tuple

import numpy as np

from .errors import SingularPoint

LOGSIN = "logsin"
HECKE = "hecke"
LOGTRIGPOLY = "logtrigpoly"


@dataclass(frozen=True)
class Observable:
    """g(x) for x on R/Z.

    ``coeffs`` are cosine coefficients c_0..c_M of r(theta) = sum c_m cos(m theta),
    theta = 2 pi x, used by the LogTrigPoly kind.  ``scale`` multiplies Hecke's
    sawtooth (2 pi gives the sawtooth of the angle in radians).  ``shift`` is a
    constant added to g.
    """

    kind: str = LOGSIN
    coeffs: Tuple[float, ...] = ()
    zero_mean: bool = True
    scale: float = 1.0
    shift: float = 0.0

    @classmethod
    def logsin(cls) -> "Observable":
        return cls(LOGSIN)

    @classmethod
    def hecke(cls, zero_mean: bool = True, scale: float = 1.0) -> "Observable":
        return cls(HECKE, zero_mean=zero_mean, scale=scale)

    @classmethod
    def log_trig_poly(cls, coeffs) -> "Observable":
        return cls(LOGTRIGPOLY, coeffs=tuple(float(c) for c in coeffs))

    def with_shift(self, c: float) -> "Observable":
        return replace(self, shift=self.shift + c)

    @property
    def singular_points(self) -> Tuple[Fraction, ...]:
        if self.kind == HECKE:
            return ()
        return (Fraction(0),)

    @property
    def mean(self) -> float:
        if self.kind == LOGSIN:
            base = 0.0
        elif self.kind == HECKE:
            base = 0.0 if self.zero_mean else 0.5 * self.scale
        else:
            base = trig_poly_log_mean(self.coeffs)
        return base + self.shift

    def values(self, u: np.ndarray) -> np.ndarray:
        """g at reduced angles u in [-1/2, 1/2)."""
        u = np.asarray(u, dtype=float)
        if self.kind == LOGSIN:
            with np.errstate(divide="ignore"):
                out = 2.0 * np.log(2.0 * np.abs(np.sin(np.pi * u)))
        elif self.kind == HECKE:
            x = np.where(u < 0, u + 1.0, u)
            out = self.scale * (x - 0.5 if self.zero_mean else x)
        elif self.kind == LOGTRIGPOLY:
            with np.errstate(divide="ignore", invalid="ignore"):
                out = np.log(trig_poly_values(self.coeffs, u))
        else:
            raise ValueError(f"unknown observable kind {self.kind!r}")
        if self.shift:
            out = out + self.shift
        return out

    def label(self) -> str:
        if self.kind == HECKE:
            text = "hecke" if self.zero_mean else "hecke-raw"
            if self.scale != 1.0:
                text += f"*{self.scale!r}"
        elif self.kind == LOGTRIGPOLY:
            text = "trigpoly:" + ",".join(repr(c) for c in self.coeffs)
        else:
            text = self.kind
        if self.shift:
            text += f"+{self.shift!r}"
        return text


def reduce(x: float) -> float:
    """Representative of x mod 1 in [-1/2, 1/2); exact for x in [0, 1)."""
    x = x % 1.0
    return x - 1.0 if x >= 0.5 else x


def evaluate(obs: Observable, x: float) -> float:
    """g(x) for a single circle value x in [0, 1)."""
    if obs.kind != HECKE and x % 1.0 == 0.0:
        raise SingularPoint(f"{obs.label()} is singular at x={x}")
    return float(obs.values(np.array([reduce(x)]))[0])


def eval_hecke(x: float, zero_mean: bool = True) -> float:
    frac = x % 1.0
    return frac - 0.5 if zero_mean else frac


def trig_poly_values(coeffs, u) -> np.ndarray:
    """r(2 pi u) = r(0) - 2 sum_m c_m sin^2(pi m u).

    The sin^2 form avoids the cancellation that sum c_m cos(m theta) suffers
    next to a root at theta = 0.
    """
    u = np.asarray(u, dtype=float)
    r0 = math.fsum(coeffs)
    acc = np.zeros_like(u)
    for m, c in enumerate(coeffs):
        if m and c:
            acc += c * np.sin(np.pi * m * u) ** 2
    return r0 - 2.0 * acc


def trig_poly_curvature(coeffs) -> float:
    """r''(0) with respect to the angle theta."""
    return -math.fsum(m * m * c for m, c in enumerate(coeffs))


def _algebraic_coeffs(coeffs) -> np.ndarray:
    # z^M r(theta) with z = e^{i theta}, highest degree first for np.roots
    M = len(coeffs) - 1
    poly = np.zeros(2 * M + 1)
    poly[M] += coeffs[0]
    for m in range(1, M + 1):
        poly[M + m] += coeffs[m] / 2
        poly[M - m] += coeffs[m] / 2
    return poly[::-1]


def trig_poly_roots(coeffs, tol: float = 1e-5) -> list:
    """Distinct roots of r on the circle, as x in [0, 1)."""
    poly = np.trim_zeros(_algebraic_coeffs(coeffs), "f")
    if len(poly) < 2:
        return []
    roots = np.roots(poly)
    on_circle = roots[np.abs(np.abs(roots) - 1.0) < tol]
    xs = sorted((np.angle(on_circle) / (2 * np.pi)) % 1.0)
    distinct = []
    for x in xs:
        if not distinct or min(abs(x - distinct[-1]), 1 - abs(x - distinct[-1])) > tol:
            distinct.append(x)
    if len(distinct) > 1 and 1 - distinct[-1] + distinct[0] <= tol:
        distinct.pop()
    return [0.0 if min(x, 1 - x) <= tol else x for x in distinct]


def trig_poly_log_mean(coeffs) -> float:
    """Mean of log|r| over the circle via Jensen's formula."""
    poly = np.trim_zeros(_algebraic_coeffs(coeffs), "f")
    roots = np.roots(poly)
    # a root of multiplicity k on the circle comes back split by ~eps**(1/k)
    outside = np.abs(roots)[np.abs(roots) > 1.0 + 1e-5]
    return math.log(abs(poly[0])) + float(np.sum(np.log(outside)))
