"""Exception types shared across the package."""


class BlochDimError(Exception):
    """Base class for all blochdim errors."""


class InvalidDimensionError(BlochDimError, ValueError):
    """A Hilbert-space dimension is out of the supported range."""


class DimensionMismatchError(BlochDimError, ValueError):
    """Two objects that must share a dimension do not."""


class InvalidAlgebraElementError(BlochDimError, ValueError):
    """Input is not a valid Lie-algebra element (or generator) for the operation."""


class NotAStateError(BlochDimError, ValueError):
    """A vector or matrix does not describe a physical quantum state."""


class NotSpecialUnitaryError(BlochDimError, ValueError):
    """A matrix is not special unitary within tolerance."""


class ResourceLimitError(BlochDimError, ValueError):
    """Requested computation exceeds the configured size limits."""
