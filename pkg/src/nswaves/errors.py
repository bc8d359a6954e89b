"""Exception types shared across the package."""


class NSWavesError(Exception):
    """Base class for all package-specific failures."""


class InvalidCurveDirection(NSWavesError):
    """Rarefaction curve queried on the compressive side of its anchor."""


class NotInR1CR3(NSWavesError):
    """End states do not connect by rarefaction-contact-rarefaction."""


class NoConvergence(NSWavesError):
    """An iterative solve exhausted its budget before reaching tolerance."""


class DomainTooSmall(NSWavesError):
    """Profile tails are not resolved inside the requested domain."""


class NonPositiveInitialData(NSWavesError):
    """Initial specific volume or temperature fails strict positivity."""


class PositivityLoss(NSWavesError):
    """A time step produced non-positive specific volume or temperature."""


class BoundaryUnavailable(NSWavesError):
    """The boundary provider could not be evaluated at the requested time."""


class MaxStepsExceeded(NSWavesError):
    """Time integration hit the step budget before reaching t_end."""


class DomainTooNarrow(NSWavesError):
    """Domain holds too few unit intervals for cell-average statistics."""


class InsufficientData(NSWavesError):
    """Diagnostics series too short to fit the requested trend."""


class ParseError(NSWavesError):
    """Config text could not be parsed."""


class ValidationError(NSWavesError):
    """Config parsed but violates a documented invariant."""
