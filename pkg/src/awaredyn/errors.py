"""Exception types shared across the package."""


class AwareDynError(Exception):
    """Base class for all package-specific errors."""


class InvalidInputError(AwareDynError, ValueError):
    """Non-finite or otherwise malformed numerical input."""


class DomainError(AwareDynError, ValueError):
    """Evaluation requested outside the operation's domain."""


class StiffnessError(AwareDynError, RuntimeError):
    """The adaptive integrator underflowed its step size."""


class InvarianceBreachError(AwareDynError, RuntimeError):
    """A trajectory left the feasible simplex by more than the tolerance."""


class InsufficientDataError(AwareDynError, ValueError):
    """A trajectory is too short for the requested post-processing."""


class AbsentEquilibriumError(AwareDynError, ValueError):
    """A closed-form equilibrium was requested where it does not exist."""


class DegenerateEquilibriumError(AwareDynError, ValueError):
    """A formula's denominator vanished at the requested parameters."""


class NotAnEquilibriumError(AwareDynError, ValueError):
    """A point handed to a stability routine is not an equilibrium."""


class NoConvergenceError(AwareDynError, RuntimeError):
    """A Newton iteration or scan failed to produce a solution."""


class SpuriousRootError(AwareDynError, RuntimeError):
    """A root solve converged to a point violating a side condition."""


class PreconditionError(AwareDynError, ValueError):
    """Operation preconditions on the parameter set are not met."""


class ConfigError(AwareDynError, ValueError):
    """Scenario configuration is malformed or violates model constraints."""
