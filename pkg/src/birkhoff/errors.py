"""Exception types raised across the package."""


class BirkhoffError(Exception):
    pass


class NotIrrational(BirkhoffError, ValueError):
    pass


class OutOfRange(BirkhoffError, ValueError):
    pass


class SingularPoint(BirkhoffError, ValueError):
    pass


class SingularHit(BirkhoffError, ValueError):
    """An orbit point landed on a singularity of the observable.

    ``index`` is the 1-based summation index j of the offending term.
    """

    def __init__(self, index, message=None):
        self.index = index
        super().__init__(message or f"orbit hits a singular point at j={index}")


class NonZeroMean(BirkhoffError, ValueError):
    pass


class DegenerateScaling(BirkhoffError, ValueError):
    pass


class DimensionMismatch(BirkhoffError, ValueError):
    pass


class EmptyHistogram(BirkhoffError, ValueError):
    pass


class ZeroBase(BirkhoffError, ValueError):
    pass


class MissingProvenance(BirkhoffError, FileNotFoundError):
    pass
