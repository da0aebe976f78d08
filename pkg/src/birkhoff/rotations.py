"""Quadratic-irrational rotation numbers, continued fractions and circle positions.

Angles on the circle R/Z are unsigned 128-bit fixed-point integers: the integer
``v`` stands for ``v * 2**-128``.  Orbit points ``x0 + j*alpha`` are formed by
exact integer multiply-and-reduce, so the only error is the truncation of
alpha itself, at most ``(j + 1) * 2**-128`` after j steps.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt
from typing import Iterator, List, Sequence, Tuple

import numpy as np

from .errors import NotIrrational, OutOfRange

FRAC_BITS = 128
ONE = 1 << FRAC_BITS
HALF = ONE >> 1
MASK = ONE - 1


def _is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def _floor_surd(P: int, D: int, Q: int) -> int:
    """floor((P + sqrt(D)) / Q) for non-square D and Q != 0."""
    s = isqrt(D)
    if Q > 0:
        return (P + s) // Q
    return -((P + s) // -Q) - 1


@dataclass(frozen=True)
class RotationNumber:
    """alpha = (a + b*sqrt(d)) / c in (0, 1)."""

    a: int
    b: int
    c: int
    d: int
    cf_preperiod: Tuple[int, ...]
    cf_period: Tuple[int, ...]
    fixed_point: int
    name: str = field(default="", compare=False)

    @property
    def value(self) -> float:
        return self.fixed_point / ONE

    def partial_quotient(self, k: int) -> int:
        """CF partial quotient a_k of [0; a_1, a_2, ...] for k >= 1."""
        if k < 1:
            raise ValueError("partial quotients are indexed from 1")
        pre = self.cf_preperiod
        if k <= len(pre):
            return pre[k - 1]
        return self.cf_period[(k - 1 - len(pre)) % len(self.cf_period)]

    def as_dict(self) -> dict:
        return {"a": self.a, "b": self.b, "c": self.c, "d": self.d, "name": self.name}

    def __str__(self) -> str:
        label = f"{self.name} " if self.name else ""
        return f"{label}({self.a} + {self.b}*sqrt({self.d}))/{self.c}"


@dataclass(frozen=True)
class Convergent:
    n: int
    p: int
    q: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.p, self.q)


@dataclass(frozen=True)
class CirclePoint:
    """A point of R/Z held as a 128-bit fixed-point fraction."""

    frac: int = 0

    def __post_init__(self):
        if not 0 <= self.frac < ONE:
            raise OutOfRange("CirclePoint.frac must lie in [0, 2**128)")

    @classmethod
    def from_fraction(cls, num: int, den: int) -> "CirclePoint":
        return cls(((num % den) << FRAC_BITS) // den)

    @classmethod
    def from_float(cls, x: float) -> "CirclePoint":
        fr = Fraction(x) % 1
        return cls(fr.numerator * ONE // fr.denominator)

    @property
    def value(self) -> float:
        return self.frac / ONE


def _surd_state(a: int, b: int, c: int, d: int) -> Tuple[int, int, int]:
    """Rewrite (a + b sqrt d)/c as (P + sqrt D)/Q with Q | D - P^2."""
    P, D, Q = a, b * b * d, c
    if b < 0:
        P, Q = -P, -Q
    if (D - P * P) % Q:
        P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    return P, D, Q


def _cf_expansion(a: int, b: int, c: int, d: int):
    P, D, Q = _surd_state(a, b, c, d)
    a0 = _floor_surd(P, D, Q)
    P = a0 * Q - P
    Q = (D - P * P) // Q
    seen = {}
    quotients: List[int] = []
    while (P, Q) not in seen:
        seen[(P, Q)] = len(quotients)
        ak = _floor_surd(P, D, Q)
        quotients.append(ak)
        P = ak * Q - P
        Q = (D - P * P) // Q
    start = seen[(P, Q)]
    return a0, tuple(quotients[:start]), tuple(quotients[start:])


def _fixed_point(a: int, b: int, c: int, d: int) -> int:
    """floor(alpha * 2**128), exact."""
    if c < 0:
        a, b, c = -a, -b, -c
    s = isqrt(b * b * d << (2 * FRAC_BITS))
    base = a << FRAC_BITS
    if b > 0:
        return (base + s) // c
    return (base - s - 1) // c


def make_rotation(a: int, b: int, c: int, d: int, name: str = "") -> RotationNumber:
    if c == 0:
        raise ValueError("c must be non-zero")
    if d < 2 or _is_square(d) or b == 0:
        raise NotIrrational(f"sqrt({d}) is rational")
    F = _fixed_point(a, b, c, d)
    if not 0 < F < ONE - 1:
        raise OutOfRange(f"({a} + {b}*sqrt({d}))/{c} is not in (0, 1)")
    a0, pre, period = _cf_expansion(a, b, c, d)
    assert a0 == 0
    return RotationNumber(a, b, c, d, pre, period, F, name)


PRESETS = {
    "golden": (-1, 1, 2, 5),
    "silver": (-1, 1, 1, 2),
    "sqrt41minus6": (-6, 1, 1, 41),
    "sqrt3minus1over2": (-1, 1, 2, 3),
    "sqrt2minus1over2": (-1, 1, 2, 2),
}


def preset(name: str) -> RotationNumber:
    return make_rotation(*PRESETS[name], name=name)


GOLDEN = preset("golden")


@lru_cache(maxsize=64)
def _convergent_table(rot: RotationNumber, n_max: int) -> Tuple[Tuple[int, int], ...]:
    # index 0 is p_0/q_0 = 0/1
    table = [(0, 1)]
    p_prev, q_prev, p, q = 1, 0, 0, 1
    for k in range(1, n_max + 1):
        ak = rot.partial_quotient(k)
        p_prev, q_prev, p, q = p, q, ak * p + p_prev, ak * q + q_prev
        table.append((p, q))
    return tuple(table)


def convergent(rot: RotationNumber, n: int, index_offset: int = 0) -> Convergent:
    """The n-th convergent.

    With ``index_offset=0`` the golden mean gives q_1, q_2, q_3 = 1, 2, 3, ...
    With ``index_offset=1`` the labels follow the Fibonacci numbering
    q_1, q_2, q_3 = 1, 1, 2, ... (label n is the default convergent n - 1).
    """
    k = n - index_offset
    if k < 0:
        raise ValueError(f"no convergent with label {n} at index offset {index_offset}")
    p, q = _convergent_table(rot, max(8, 1 << k.bit_length()))[k]
    return Convergent(n, p, q)


def convergents(rot: RotationNumber, n_max: int, index_offset: int = 0) -> List[Convergent]:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    return [convergent(rot, n, index_offset) for n in range(1, n_max + 1)]


def circle_orbit(rot: RotationNumber, x0: CirclePoint, j: int) -> CirclePoint:
    if j < 0:
        raise ValueError("j must be >= 0")
    return CirclePoint((x0.frac + j * rot.fixed_point) & MASK)


def orbit_fracs(rot: RotationNumber, start: int, count: int, x0: CirclePoint | None = None) -> List[int]:
    """Fixed-point positions of x0 + j*alpha for j = start .. start+count-1."""
    F = rot.fixed_point
    base = 0 if x0 is None else x0.frac
    return [(base + j * F) & MASK for j in range(start, start + count)]


def reduced_angles(fracs: Sequence[int]) -> np.ndarray:
    """Map fixed-point fractions to signed floats in [-1/2, 1/2).

    The reduction is done on the integers, so points close to 0 from either
    side keep full relative precision.
    """
    scale = 2.0 ** -FRAC_BITS
    return np.array([float(v if v < HALF else v - ONE) for v in fracs]) * scale


def floor_multiples(rot: RotationNumber, ks: Sequence[int]) -> np.ndarray:
    """Exact floor(k*alpha) for integers k >= 0."""
    F = rot.fixed_point
    return np.array([(int(k) * F) >> FRAC_BITS for k in ks], dtype=np.int64)


def rational_orbit(p: int, q: int, j: int) -> int:
    if gcd(p, q) != 1:
        raise ValueError("p and q must be coprime")
    return (j * p) % q


def rational_residues(p: int, q: int, start: int, count: int, x0_num: int = 0) -> np.ndarray:
    """(x0_num + j*p) mod q for j = start .. start+count-1, exactly."""
    if q < 2**31:
        j = np.arange(start, start + count, dtype=np.int64) % q
        return (x0_num % q + j * (p % q)) % q
    return np.array([(x0_num + j * p) % q for j in range(start, start + count)], dtype=object)


def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def iter_partial_quotients(rot: RotationNumber) -> Iterator[int]:
    k = 1
    while True:
        yield rot.partial_quotient(k)
        k += 1
