"""Exception types shared across the package."""


class DeltaformError(Exception):
    """Base class for all package errors."""


class DimensionError(DeltaformError, ValueError):
    pass


class SingularMatrixError(DeltaformError, ValueError):
    pass


class RankError(DeltaformError, ValueError):
    pass


class GroupMismatchError(DeltaformError, ValueError):
    pass


class NotInFundamentalDomainError(DeltaformError, ValueError):
    pass


class CapExceededError(DeltaformError):
    """A brute-force search would exceed its configured cap."""


class NotFoundError(DeltaformError):
    pass


class PrecisionExhaustedError(DeltaformError):
    """Adaptive precision failed to certify a rounding step."""


class ConfigError(DeltaformError, ValueError):
    pass


class SchemaError(DeltaformError, ValueError):
    """Malformed instance or map file; ``field`` names the offending entry."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message
