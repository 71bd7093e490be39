"""Exception types shared across the package."""


class NormGeoError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(NormGeoError, ValueError):
    """A vector, functional, or operator has the wrong dimension for its space."""


class UndefinedInput(NormGeoError, ValueError):
    """An input outside an operation's domain (zero vector, bad eps, empty grid)."""


class UnsupportedSpace(NormGeoError, ValueError):
    """The space kind does not support the requested operation."""


class ParseError(NormGeoError, ValueError):
    """A serialized space, vector, or operator could not be parsed."""


class InternalInconsistency(NormGeoError, RuntimeError):
    """Two independent computation routes disagreed beyond their shared band.

    Raising this instead of picking a side keeps tolerance bugs loud.
    """


class ConstructionFailed(NormGeoError, RuntimeError):
    """A witness/operator construction did not verify against its contract."""
