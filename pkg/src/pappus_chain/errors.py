"""Exception hierarchy shared by every module of the package."""


class PappusError(Exception):
    """Base class for all errors raised by this package."""


class ConstructionError(PappusError, ValueError):
    """A Rational could not be built (zero denominator, unparsable text)."""


class DomainError(PappusError, ValueError):
    """An argument lies outside the domain of the operation."""


class ParameterError(PappusError, ValueError):
    """Index parameters violate an operation's hypothesis (i = j, i + j = 0, ...)."""


class DegenerateGeometryError(PappusError):
    """The requested object does not exist for this configuration."""


class NoIntersectionError(DegenerateGeometryError):
    """Two lines that were expected to meet are parallel."""


class UndefinedImageError(DegenerateGeometryError):
    """The image of the inversion center was requested."""


class InternalConsistencyError(PappusError, AssertionError):
    """A geometric identity that must always hold was violated."""


class RenderError(PappusError):
    """A figure could not be emitted."""
