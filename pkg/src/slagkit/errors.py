"""Exception hierarchy shared by all slagkit modules."""


class SlagkitError(Exception):
    """Base class for every error raised by this package."""


class IntegrationError(SlagkitError):
    """Step-size control failed while integrating a curve ODE."""

    def __init__(self, message, t=None):
        super().__init__(message if t is None else f"{message} (at t={t:.17g})")
        self.t = t


class SingularRadiusError(IntegrationError):
    """A curve component came within the guard radius of the origin."""


class DegenerateError(SlagkitError):
    """Input sits on a singular or degenerate configuration."""


class VertexSingularityError(DegenerateError):
    """Evaluation at the cone vertex c = s = 0."""


class DegenerateFrameError(DegenerateError):
    """Tangent vectors are (numerically) linearly dependent."""


class ZeroComponentError(DegenerateError):
    """A surface point has a vanishing complex coordinate."""


class EqualityCaseError(DegenerateError):
    """Critical radii coincide, so the radial motion has no finite period."""


class NotLegendrianError(SlagkitError):
    """A factor map fails the Legendrian condition at the sampled point."""


class ConvergenceError(SlagkitError):
    """An iterative solver stopped before reaching its tolerance."""

    def __init__(self, message, log=None, result=None):
        super().__init__(message)
        self.log = log if log is not None else []
        self.result = result


class NotLagrangianError(SlagkitError):
    """An assembled frame is not orthonormal, so the tangent space is not Lagrangian."""
