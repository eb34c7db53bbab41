"""Exception types shared across the package."""


class BlaschkeLabError(Exception):
    """Base class for all package-specific errors."""


class DomainError(BlaschkeLabError, ValueError):
    """An input violates a documented precondition (bad exponent, point off
    the circle, zero outside the disc, and so on)."""


class UnsatisfiableNormalizationError(DomainError):
    """Normalization to |f(0)| = 1 requested for a function with f(0) = 0."""


class SingularEvaluationError(BlaschkeLabError, ValueError):
    """An evaluator was called exactly at a point where the value is not
    finite (for example a negative-exponent weight at its own singular
    point)."""

    def __init__(self, message: str, point: complex | None = None):
        super().__init__(message)
        self.point = point


class QuadratureEvaluationError(BlaschkeLabError, RuntimeError):
    """The integrand returned a non-finite value at a quadrature node."""

    def __init__(self, message: str, point: complex | None = None):
        super().__init__(message)
        self.point = point


class ContourTooCloseError(BlaschkeLabError, RuntimeError):
    """A contour passes too close to a zero of f for the winding integral to
    be trusted; callers retry with a perturbed contour."""


class NonIntegralWindingError(BlaschkeLabError, RuntimeError):
    """The winding integral failed to land near an integer even after
    contour perturbation."""

    def __init__(self, message: str, value: complex | None = None):
        super().__init__(message)
        self.value = value


class NonSmoothPointError(BlaschkeLabError, ValueError):
    """Numerical differentiation was requested at a point where one-sided
    differences disagree (medial set of a distance function)."""


class ScenarioRejectedError(BlaschkeLabError, ValueError):
    """A scenario violates the hypotheses of the requested check; the
    message names the violated condition."""


class ConfigError(BlaschkeLabError, ValueError):
    """A scenario configuration file is unreadable or violates the schema."""
