"""Exception hierarchy for the mass-capacity verification lab."""


class MassCapError(Exception):
    """Base class for all library errors."""


class NumericsError(MassCapError):
    """A numerical routine failed to reach its declared tolerance."""


class SlowDecay(NumericsError):
    """Asymptotic coefficient extraction did not stabilize.

    Signals a profile whose deviation from flat lacks a clean
    r^-(n-2) leading term, so the coefficient-based mass/capacity
    extraction is not valid.
    """


class DivergentIntegral(NumericsError):
    """Tail quadrature for the capacity integral failed to converge."""


class NonConvergence(NumericsError):
    """The variational capacity solve failed its tolerance checks."""


class FluxDrift(NumericsError):
    """Flux of an allegedly harmonic potential varies across radii."""


class NonPositiveConformalFactor(MassCapError):
    """Conformal factor u(r) is not strictly positive where required."""


class ProfileDomainError(MassCapError):
    """A radial profile was evaluated outside its domain [r0, infinity)."""


class ZeroMeanCurvature(MassCapError):
    """Boundary mean curvature vanishes; normalization undefined."""


class DegenerateHorizon(MassCapError):
    """Minimal-surface boundary (x = 1): Lambda and c are undefined."""


class AlphaOutOfRange(MassCapError):
    """Boundary potential value alpha lies outside (0, 1)."""


class NegativeScalarCurvature(MassCapError):
    """Boundary scalar curvature is negative where a round-sphere
    quantity (eigenvalue, Euclidean mean curvature) is required."""


class NotStatic(MassCapError):
    """Static-equation residuals exceed tolerance; triple is not a
    static vacuum within the declared accuracy."""


class EqualityGapExceeded(MassCapError):
    """Rigidity pipeline: m - (1-alpha)*C exceeded the equality tolerance."""


class ScenarioParseError(MassCapError):
    """Scenario file is malformed or violates the schema."""


class CheckFailure(MassCapError):
    """An internal invariant assertion failed while running a scenario.

    Carries the (partial) report so callers can still persist artifacts.
    """

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
