"""Experiment configuration and the string formats used on the command line."""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass, fields
from fractions import Fraction
from typing import Optional, Tuple

from ..observables import Observable
from ..rotations import PRESETS, CirclePoint, RotationNumber, make_rotation, preset


def parse_rotation(text: str) -> RotationNumber:
    """A preset name, or "a,b,c,d" for (a + b sqrt d)/c."""
    if text in PRESETS:
        return preset(text)
    try:
        a, b, c, d = (int(t) for t in text.split(","))
    except ValueError:
        raise ValueError(
            f"--alpha expects one of {sorted(PRESETS)} or four integers a,b,c,d; got {text!r}") from None
    return make_rotation(a, b, c, d)


def parse_observable(text: str) -> Observable:
    """logsin | hecke | hecke-raw | hecke-rad | trigpoly:c0,c1,...

    hecke is {x} - 1/2; hecke-raw is {x}; hecke-rad is 2 pi ({x} - 1/2), the
    sawtooth of the angle in radians.
    """
    if text == "logsin":
        return Observable.logsin()
    if text == "hecke":
        return Observable.hecke()
    if text == "hecke-raw":
        return Observable.hecke(zero_mean=False)
    if text == "hecke-rad":
        return Observable.hecke(scale=2 * math.pi)
    if text.startswith("trigpoly:"):
        return Observable.log_trig_poly(float(t) for t in text.split(":", 1)[1].split(","))
    raise ValueError(f"--obs expects logsin, hecke, hecke-raw, hecke-rad or trigpoly:c0,c1,...; got {text!r}")


def parse_x0(text: str) -> Optional[CirclePoint]:
    fr = Fraction(text)
    if fr == 0:
        return None
    return CirclePoint.from_fraction(fr.numerator, fr.denominator)


@dataclass
class ExperimentConfig:
    alpha: str = "golden"
    obs: str = "logsin"
    n: Optional[int] = None
    K: Optional[int] = None
    x0: str = "0"
    out: str = "out"
    format: str = "csv"
    normalization: str = "logk"
    index_offset: int = 0
    bins: int = 200
    range: Tuple[float, float] = (0.0, 2.0)
    deep: bool = False
    m: int = 1
    m_max: int = 32

    def __post_init__(self):
        self.range = tuple(float(v) for v in self.range)
        if self.format not in ("csv", "json"):
            raise ValueError("--format must be csv or json")
        if self.normalization not in ("logk", "logqn"):
            raise ValueError("--normalization must be logk or logqn")
        if self.n is not None and self.n < 1:
            raise ValueError("--n must be >= 1")
        if self.K is not None and self.K < 1:
            raise ValueError("--K must be >= 1")
        if self.bins < 1 or not self.range[1] > self.range[0]:
            raise ValueError("--bins must be >= 1 and --range must be increasing")
        parse_rotation(self.alpha)
        parse_observable(self.obs)
        parse_x0(self.x0)

    def rotation(self) -> RotationNumber:
        return parse_rotation(self.alpha)

    def observable(self) -> Observable:
        return parse_observable(self.obs)

    def x0_point(self) -> Optional[CirclePoint]:
        return parse_x0(self.x0)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["range"] = list(self.range)
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "ExperimentConfig":
        names = {f.name for f in fields(cls)}
        return cls(**{k: v for k, v in d.items() if k in names})

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        return cls.from_dict(json.loads(text))
