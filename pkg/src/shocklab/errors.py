"""Exception hierarchy shared across the package."""


class ShockLabError(Exception):
    """Base class for all package errors."""


class DomainError(ShockLabError):
    """A state lies outside the (extended) domain of the model."""


class GridError(ShockLabError):
    """A quadrature grid does not cover the data it is asked to integrate."""


class ContinuationError(ShockLabError):
    """Hugoniot continuation failed (Newton breakdown, fold, domain exit).

    The partial curve traced so far is attached as ``partial_curve``.
    """

    def __init__(self, message, partial_curve=None):
        super().__init__(message)
        self.partial_curve = partial_curve


class DomainExitError(ShockLabError):
    """A rarefaction trace left the state-space domain before the requested span."""

    def __init__(self, message, partial_curve=None):
        super().__init__(message)
        self.partial_curve = partial_curve


class QuadratureError(ShockLabError):
    """Adaptive quadrature failed to reach its tolerance."""


class SurfaceEmptyError(ShockLabError):
    """No ray from the interior seed crossed the weighted level surface."""


class AdmissibilityError(ShockLabError):
    """A discontinuity failed a required admissibility flag."""


class DegenerateError(ShockLabError):
    """Eigenstructure is degenerate (e.g. magnetic field below its floor)."""


class NotApplicableError(ShockLabError):
    """The hypotheses of the requested check are not met by the supplied data."""


class PreconditionError(ShockLabError):
    """An operation-specific precondition failed."""


class BracketError(ShockLabError):
    """Both endpoints of a weight bracket gave the same verdict."""


class CflError(ShockLabError):
    """A time step violates the CFL restriction."""


class BoundaryError(ShockLabError):
    """Waves would reach (or have reached) the boundary of the simulation window."""
