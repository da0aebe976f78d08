"""Birkhoff sums of log|2 - 2 cos 2 pi x| over quadratic-irrational rotations."""

from .errors import (
    DegenerateScaling,
    DimensionMismatch,
    EmptyHistogram,
    MissingProvenance,
    NonZeroMean,
    NotIrrational,
    OutOfRange,
    SingularHit,
    SingularPoint,
    ZeroBase,
)
from .observables import Observable, eval_hecke, evaluate
from .rotations import (
    GOLDEN,
    CirclePoint,
    Convergent,
    RotationNumber,
    circle_orbit,
    convergent,
    convergents,
    make_rotation,
    preset,
    rational_orbit,
)
from .sums import SumTrace, birkhoff_irrational, birkhoff_rational, subsequence_at_convergents

__version__ = "0.1.0"
