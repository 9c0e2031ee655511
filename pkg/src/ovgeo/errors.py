"""Exception types shared across the package.

Division by zero in a field reuses the builtin ZeroDivisionError; everything
else gets a named class so callers (and the CLI exit-code mapping) can tell
usage mistakes apart from resource limits.
"""


class OvgeoError(Exception):
    """Base class for all package-specific errors."""


class EvenDegreeError(OvgeoError, ValueError):
    """Field degree must be odd: the Suzuki twist needs 2^(e+1) with 2e+1 bits."""


class DegreeTooSmallError(OvgeoError, ValueError):
    """Field degree must be at least 3."""


class AllZeroCoordinatesError(OvgeoError, ValueError):
    """A projective point needs at least one nonzero coordinate."""


class ZeroTorusParameterError(OvgeoError, ValueError):
    """Torus elements are indexed by nonzero field elements."""


class OvoidNotPreservedError(OvgeoError, RuntimeError):
    """An action formula failed to permute the ovoid; signals a formula bug."""


class TierExceededError(OvgeoError, RuntimeError):
    """Requested a full materialization past the configured size threshold."""

    def __init__(self, message: str, order: int | None = None):
        super().__init__(message)
        self.order = order


class NoTrialityError(OvgeoError, ValueError):
    """The ambient field degree is not divisible by 3."""


class BasePointFixedError(OvgeoError, ValueError):
    """The chosen base point must not be fixed by the triality map."""


class NotRealizableError(OvgeoError, ValueError):
    """No involution at the base point yields the requested product order."""


class DegenerateTriangleError(OvgeoError, ValueError):
    """The three reflection subgroups coincide; no rank-3 structure exists."""


class NotAFlagError(OvgeoError, ValueError):
    """Residues are only defined for pairwise-incident element sets."""
