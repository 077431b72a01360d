"""Error types shared across the package."""


class ToolkitError(Exception):
    """Base class for all package-specific errors."""


class DimensionError(ToolkitError, ValueError):
    """Operands have incompatible or unsupported dimensions."""


class DomainError(ToolkitError, ValueError):
    """Argument lies outside the domain an operation is defined on."""


class InvariantViolation(ToolkitError, ValueError):
    """A numeric invariant (positivity, normalization, unitarity) failed
    beyond its tolerance."""


class NotHermitianError(InvariantViolation):
    """Matrix required to be Hermitian deviates beyond tolerance."""


class DegenerateSenderEntropy(ToolkitError, ArithmeticError):
    """The sender-side entropy is numerically zero where a ratio needs it."""
