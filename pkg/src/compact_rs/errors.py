"""Exception hierarchy shared by all modules."""


class CompactRSError(Exception):
    """Base class for every error raised by this package."""


class DimensionMismatch(CompactRSError, ValueError):
    pass


class NotUnitary(CompactRSError, ValueError):
    pass


class InvalidCoupling(CompactRSError, ValueError):
    pass


class IrregularCoupling(CompactRSError, ValueError):
    pass


class AmbiguousClassification(CompactRSError, ValueError):
    """A float coupling sits within the angular tolerance of an interval endpoint.

    Supply the coupling as an exact rational multiple of pi instead.
    """


class SingularAlcovePoint(CompactRSError, ValueError):
    pass


class NearPole(CompactRSError, ArithmeticError):
    pass


class NotCoprime(CompactRSError, ValueError):
    pass


class DegenerateSimplex(CompactRSError, ValueError):
    pass


class Unbounded(CompactRSError, ValueError):
    pass


class EnumerationCap(CompactRSError, ValueError):
    """Vertex enumeration refused because n exceeds the supported cap."""


class NegativeZ(CompactRSError, ValueError):
    pass


class VnNearMinusOne(CompactRSError, ValueError):
    pass


class OutsideDomain(CompactRSError, ValueError):
    pass


class SingularB(CompactRSError, ValueError):
    pass


class OutsideChart(CompactRSError, ValueError):
    pass


class MismatchedParameters(CompactRSError, ValueError):
    pass


class SamplingExhausted(CompactRSError, RuntimeError):
    pass
