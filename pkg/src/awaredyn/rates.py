"""Prevalence-dependent rate coefficients.

The two-compartment awareness model allows several of its rate coefficients
to depend on the infectious fraction ``i`` through one of three closed
functional families:

    constant      c
    linear        c * (1 + i)
    reciprocal    c / (1 + i)

Keeping the family closed (instead of accepting arbitrary callables) makes
derivative evaluation exact, which the analytic Jacobians rely on.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import ConfigError, InvalidInputError

FAMILIES = ("constant", "linear", "reciprocal")


@dataclass(frozen=True)
class RateFunction:
    """A nonnegative scalar rate as a function of prevalence ``i`` in [0, 1]."""

    family: str
    coefficient: float

    def __post_init__(self) -> None:
        if self.family not in FAMILIES:
            raise InvalidInputError(
                f"unknown rate family {self.family!r}; expected one of {FAMILIES}"
            )
        c = float(self.coefficient)
        if not math.isfinite(c) or c < 0.0:
            raise InvalidInputError(
                f"rate coefficient must be finite and >= 0, got {self.coefficient!r}"
            )
        object.__setattr__(self, "coefficient", c)

    def __call__(self, i: float) -> float:
        c = self.coefficient
        if self.family == "constant":
            return c
        if self.family == "linear":
            return c * (1.0 + i)
        return c / (1.0 + i)

    def derivative(self, i: float) -> float:
        """Exact d/di of the rate at prevalence ``i``."""
        c = self.coefficient
        if self.family == "constant":
            return 0.0
        if self.family == "linear":
            return c
        return -c / (1.0 + i) ** 2

    def max_on_unit_interval(self) -> float:
        """Largest value attained for i in [0, 1]."""
        if self.family == "linear":
            return 2.0 * self.coefficient
        # constant everywhere; reciprocal peaks at i = 0
        return self.coefficient

    @property
    def is_zero(self) -> bool:
        return self.coefficient == 0.0

    @classmethod
    def constant(cls, c: float) -> "RateFunction":
        return cls("constant", c)

    @classmethod
    def linear(cls, c: float) -> "RateFunction":
        return cls("linear", c)

    @classmethod
    def reciprocal(cls, c: float) -> "RateFunction":
        return cls("reciprocal", c)

    @classmethod
    def parse(cls, spec: str) -> "RateFunction":
        """Parse a ``family:coefficient`` string, e.g. ``linear:4.0``."""
        parts = spec.split(":")
        if len(parts) != 2:
            raise ConfigError(
                f"rate spec {spec!r} must have the form family:coefficient"
            )
        family, raw = parts[0].strip(), parts[1].strip()
        if family not in FAMILIES:
            raise ConfigError(
                f"unknown rate family {family!r} in {spec!r}; "
                f"expected one of {FAMILIES}"
            )
        try:
            coefficient = float(raw)
        except ValueError:
            raise ConfigError(f"rate coefficient {raw!r} in {spec!r} is not a number")
        try:
            return cls(family, coefficient)
        except InvalidInputError as exc:
            raise ConfigError(str(exc))

    def spec_string(self) -> str:
        """Canonical ``family:coefficient`` form (inverse of :meth:`parse`)."""
        return f"{self.family}:{self.coefficient:.17g}"
