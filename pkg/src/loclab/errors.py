"""Exception hierarchy shared across the package."""


class LoclabError(Exception):
    """Base class for all package-specific errors."""


class InvalidFamily(LoclabError):
    """(n, p) does not belong to any admissible Hopf-fibration family."""


class InvalidDegree(LoclabError):
    """Spherical-harmonic degree k is odd or below 2."""


class DomainTooShort(LoclabError):
    """Requested radius exceeds the range covered by a profile."""


class StepSizeUnderflow(LoclabError):
    """The adaptive integrator could not make progress."""


class NonFiniteState(LoclabError):
    """The phase-plane state left the representable range."""


class InsufficientEvents(LoclabError):
    """Not enough detected events to build the requested record."""


class NotConverged(LoclabError):
    """Orbit did not reach the equilibrium; downstream extraction refused."""


class WrongCase(LoclabError):
    """Barrier certificate requested for the wrong stability class."""


class WrongType(LoclabError):
    """Operation defined only for the other stability class."""


class NotOnSphere(LoclabError):
    """Input vector is not a unit vector within tolerance."""
