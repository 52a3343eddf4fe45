"""Exception types shared by all modules."""


class DFRHTError(ValueError):
    """Base class for invalid-argument errors raised by this package."""


class SizeError(DFRHTError):
    """Exponent or size outside the supported range."""


class ShapeError(DFRHTError):
    """Vector length does not match the transform size."""


class DegenerateInputError(DFRHTError):
    """Input violates a structural assumption (e.g. a zero entry where signs are counted)."""
