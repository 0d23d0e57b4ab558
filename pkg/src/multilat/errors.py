"""Exception types shared across the package."""


class MultilatError(Exception):
    """Base class for all package-specific errors."""


class DimensionMismatch(MultilatError):
    pass


class NotUnimodular(MultilatError):
    pass


class CapExceeded(MultilatError):
    """A closure or enumeration grew past its configured cap."""


class SizeLimitExceeded(MultilatError):
    """Input too large for a brute-force oracle."""


class NotASolution(MultilatError):
    pass


class NotInvariant(MultilatError):
    """A shift matrix fails the invariance condition for some generator.

    Attributes carry the offending generator index (0-based) and entry.
    """

    def __init__(self, generator, entry, value):
        self.generator = generator
        self.entry = entry
        self.value = value
        super().__init__(
            f"generator {generator}: residual entry {entry} = {value} is not an integer"
        )


class PreconditionFailed(MultilatError):
    pass


class ParseError(MultilatError):
    pass
