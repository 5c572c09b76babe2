"""Exception hierarchy shared by all modules."""


class HqrError(Exception):
    """Base class for numerical failures raised by hqrlab."""

    module = "hqrlab"


class DomainError(HqrError, ValueError):
    """An argument lies outside the domain where an operation is defined."""


class CriticalPointError(HqrError):
    """h' vanishes (numerically) at ``z``, so the map is not sense-preserving there."""

    module = "series"

    def __init__(self, z, message=None):
        self.z = z
        super().__init__(message or f"h' vanishes at z={z!r}; map is not sense-preserving")


class NotQuasiregularError(HqrError):
    """The measured dilatation reaches or exceeds 1."""

    module = "series"


class FitError(HqrError):
    """A regression could not be carried out (too few points, bad data, unconverged)."""

    module = "analysis"


class PairingError(HqrError):
    """Two profiles that must share exponent and radius grid do not."""

    module = "analysis"


class EvaluationError(HqrError):
    """Wraps a failure raised while sampling a subject on the circle of radius ``r``."""

    module = "means"

    def __init__(self, r, cause):
        self.r = r
        self.cause = cause
        super().__init__(f"evaluation failed at r={r!r}: {cause}")
