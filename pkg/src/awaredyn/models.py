"""Vector fields, Jacobians, and parameter containers for the two models.

Two compartmental awareness-epidemic models are implemented:

* the 2-D susceptible/aware/infectious model with awareness gained upon
  recovery, state ``(a, i)`` with ``s = 1 - a - i`` derived;
* its 3-D extension with an additional "unwilling" compartment (aware hosts
  who do not alert others), state ``(a, u, i)`` with ``s = 1 - a - u - i``.

The susceptible fraction ``s`` is always derived, never stored, so mass
conservation is structural.  All functions here are pure; parameter objects
are frozen dataclasses and safe to share across threads.

2-D system (rates may depend on prevalence i):

    da/dt = alpha_i(i) s i + alpha_a(i) s a + p(i) delta i
            - beta_a a i - delta_a(i) a
    di/dt = (beta s + beta_a a - delta) i

3-D system (constant rates; recovering hosts split p : q : 1-p-q into
aware, unwilling, and susceptible):

    da/dt = alpha_i s i + alpha_a s a + p delta i - beta_a a i - delta_a a
    du/dt = delta_a a + alpha_u s a + q delta i - beta_u u i - delta_u u
    di/dt = (beta s + beta_a a + beta_u u - delta) i
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .rates import RateFunction

OMEGA_TOL = 1e-12

# Field order of SauisuasParams; also the layout of the plain parameter
# vectors used by the continuation code (which must evaluate the field at
# parameter combinations outside the validated biological region).
SAUISUAS_PARAM_NAMES = (
    "beta",
    "beta_a",
    "beta_u",
    "delta",
    "delta_a",
    "delta_u",
    "alpha_i",
    "alpha_a",
    "alpha_u",
    "p",
    "q",
)


def _require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise InvalidInputError(f"{name} must be finite, got {value!r}")
    return value


@dataclass(frozen=True)
class SaiasParams:
    """Parameters of the 2-D model.

    ``beta``/``beta_a`` are the transmission rates towards susceptible and
    aware hosts, ``delta`` the recovery rate.  ``alpha_i``, ``alpha_a``,
    ``delta_a``, and ``p`` are prevalence-dependent coefficients: awareness
    acquisition from prevalence, awareness transmission by contact,
    awareness decay, and the fraction of recovering hosts that become aware.
    """

    beta: float
    beta_a: float
    delta: float
    alpha_i: RateFunction
    alpha_a: RateFunction
    delta_a: RateFunction
    p: RateFunction

    def __post_init__(self) -> None:
        for name in ("beta", "beta_a", "delta"):
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))
        if not self.beta > 0.0:
            raise InvalidInputError(f"beta must be > 0, got {self.beta}")
        if not 0.0 <= self.beta_a < self.beta:
            raise InvalidInputError(
                f"beta_a must satisfy 0 <= beta_a < beta, got "
                f"beta_a={self.beta_a}, beta={self.beta}"
            )
        if not self.delta > 0.0:
            raise InvalidInputError(f"delta must be > 0, got {self.delta}")
        for name in ("alpha_i", "alpha_a", "delta_a", "p"):
            if not isinstance(getattr(self, name), RateFunction):
                raise InvalidInputError(f"{name} must be a RateFunction")
        if self.alpha_a.coefficient <= 0.0:
            raise InvalidInputError("alpha_a must be positive on [0, 1]")
        if self.delta_a.coefficient <= 0.0:
            raise InvalidInputError("delta_a must be positive on [0, 1]")
        if self.p.max_on_unit_interval() > 1.0:
            raise InvalidInputError(
                f"p must stay within [0, 1] for i in [0, 1]; "
                f"{self.p.spec_string()} peaks at {self.p.max_on_unit_interval()}"
            )

    @property
    def sais_reduction(self) -> bool:
        """True when p is identically zero.

        Recovery then conveys no awareness, reducing the model to its
        classical variant.  Accepted here (it is needed as a comparison
        case) even though the modelling assumptions call for p(i) > 0 at
        positive prevalence.
        """
        return self.p.is_zero


@dataclass(frozen=True)
class SauisuasParams:
    """Parameters of the 3-D model (all rate coefficients constant).

    Rates: ``beta``/``beta_a``/``beta_u`` transmission towards
    susceptible/aware/unwilling hosts, ``delta`` recovery, ``delta_a``
    aware-to-unwilling decay, ``delta_u`` unwilling-to-susceptible decay,
    ``alpha_i`` awareness from prevalence, ``alpha_a``/``alpha_u``
    awareness/unwillingness acquisition by contact with aware hosts.
    Proportions: recovering hosts become aware (``p``), unwilling (``q``),
    or susceptible (``1 - p - q``).
    """

    beta: float
    beta_a: float
    beta_u: float
    delta: float
    delta_a: float
    delta_u: float
    alpha_i: float
    alpha_a: float
    alpha_u: float
    p: float
    q: float

    def __post_init__(self) -> None:
        for name in SAUISUAS_PARAM_NAMES:
            object.__setattr__(self, name, _require_finite(name, getattr(self, name)))
        for name in ("delta", "delta_a", "delta_u", "alpha_i", "alpha_a", "alpha_u"):
            if not getattr(self, name) > 0.0:
                raise InvalidInputError(f"{name} must be > 0, got {getattr(self, name)}")
        if not self.beta > 0.0:
            raise InvalidInputError(f"beta must be > 0, got {self.beta}")
        for name in ("beta_a", "beta_u"):
            value = getattr(self, name)
            if not 0.0 <= value < self.beta:
                raise InvalidInputError(
                    f"{name} must satisfy 0 <= {name} < beta, got "
                    f"{name}={value}, beta={self.beta}"
                )
        if self.p < 0.0 or self.q < 0.0:
            raise InvalidInputError(
                f"p and q must be >= 0, got p={self.p}, q={self.q}"
            )
        if self.p + self.q > 1.0 + 1e-12:
            raise InvalidInputError(
                f"p + q must be <= 1, got p={self.p}, q={self.q} "
                f"(sum {self.p + self.q})"
            )

    def as_vector(self) -> np.ndarray:
        """Plain float vector in ``SAUISUAS_PARAM_NAMES`` order."""
        return np.array([getattr(self, name) for name in SAUISUAS_PARAM_NAMES])


def in_omega(state, tol: float = OMEGA_TOL) -> bool:
    """Membership in the feasible simplex (coordinates >= 0, sum <= 1).

    Works for both the 2-D state ``(a, i)`` and the 3-D state ``(a, u, i)``.
    A tolerance absorbs solver rounding at the boundary.
    """
    total = 0.0
    for x in state:
        x = float(x)
        if not math.isfinite(x) or x < -tol:
            return False
        total += x
    return total <= 1.0 + tol


def _check_state(state, dim: int) -> tuple:
    if len(state) != dim:
        raise InvalidInputError(f"expected a state of length {dim}, got {len(state)}")
    values = tuple(float(x) for x in state)
    for x in values:
        if not math.isfinite(x):
            raise InvalidInputError(f"state must be finite, got {values}")
    return values


def saias_field(state, params: SaiasParams) -> np.ndarray:
    """Right-hand side (da/dt, di/dt) of the 2-D system.

    The state is not required to lie in the simplex: boundary and exterior
    evaluations are needed by the invariance checks.
    """
    a, i = _check_state(state, 2)
    s = 1.0 - a - i
    dadt = (
        params.alpha_i(i) * s * i
        + params.alpha_a(i) * s * a
        + params.p(i) * params.delta * i
        - params.beta_a * a * i
        - params.delta_a(i) * a
    )
    didt = (params.beta * s + params.beta_a * a - params.delta) * i
    return np.array([dadt, didt])


def saias_jacobian(state, params: SaiasParams) -> np.ndarray:
    """Analytic Jacobian of :func:`saias_field` at ``state``."""
    a, i = _check_state(state, 2)
    s = 1.0 - a - i
    alpha_i = params.alpha_i(i)
    alpha_a = params.alpha_a(i)
    delta_a = params.delta_a(i)
    p = params.p(i)
    d_alpha_i = params.alpha_i.derivative(i)
    d_alpha_a = params.alpha_a.derivative(i)
    d_delta_a = params.delta_a.derivative(i)
    d_p = params.p.derivative(i)

    j11 = alpha_a * (s - a) - alpha_i * i - params.beta_a * i - delta_a
    j12 = (
        d_alpha_i * s * i
        + alpha_i * (s - i)
        + d_alpha_a * s * a
        - alpha_a * a
        + d_p * params.delta * i
        + p * params.delta
        - params.beta_a * a
        - d_delta_a * a
    )
    j21 = -(params.beta - params.beta_a) * i
    j22 = params.beta * s + params.beta_a * a - params.beta * i - params.delta
    return np.array([[j11, j12], [j21, j22]])


def _field3(a, u, i, beta, beta_a, beta_u, delta, delta_a, delta_u,
            alpha_i, alpha_a, alpha_u, p, q):
    """Core 3-D right-hand side on plain floats (no validation)."""
    s = 1.0 - a - u - i
    f1 = alpha_i * s * i + alpha_a * s * a + p * delta * i - beta_a * a * i - delta_a * a
    f2 = delta_a * a + alpha_u * s * a + q * delta * i - beta_u * u * i - delta_u * u
    f3 = (beta * s + beta_a * a + beta_u * u - delta) * i
    return f1, f2, f3


def _jacobian3(a, u, i, beta, beta_a, beta_u, delta, delta_a, delta_u,
               alpha_i, alpha_a, alpha_u, p, q):
    """Analytic Jacobian of :func:`_field3` as a nested tuple."""
    s = 1.0 - a - u - i
    return (
        (
            -alpha_i * i + alpha_a * (s - a) - beta_a * i - delta_a,
            -alpha_i * i - alpha_a * a,
            alpha_i * (s - i) - alpha_a * a + p * delta - beta_a * a,
        ),
        (
            delta_a + alpha_u * (s - a),
            -alpha_u * a - beta_u * i - delta_u,
            -alpha_u * a + q * delta - beta_u * u,
        ),
        (
            -(beta - beta_a) * i,
            -(beta - beta_u) * i,
            beta * s + beta_a * a + beta_u * u - delta - beta * i,
        ),
    )


def sauisuas_field(state, params: SauisuasParams) -> np.ndarray:
    """Right-hand side (da/dt, du/dt, di/dt) of the 3-D system."""
    a, u, i = _check_state(state, 3)
    return np.array(_field3(
        a, u, i,
        params.beta, params.beta_a, params.beta_u,
        params.delta, params.delta_a, params.delta_u,
        params.alpha_i, params.alpha_a, params.alpha_u,
        params.p, params.q,
    ))


def sauisuas_jacobian(state, params: SauisuasParams) -> np.ndarray:
    """Analytic Jacobian of :func:`sauisuas_field` at ``state``."""
    a, u, i = _check_state(state, 3)
    return np.array(_jacobian3(
        a, u, i,
        params.beta, params.beta_a, params.beta_u,
        params.delta, params.delta_a, params.delta_u,
        params.alpha_i, params.alpha_a, params.alpha_u,
        params.p, params.q,
    ))


def sauisuas_hessian(params: SauisuasParams) -> np.ndarray:
    """Second derivatives of the 3-D field, shape (3, 3, 3).

    ``H[k, j, l]`` is d^2 f_k / (dx_j dx_l) with x = (a, u, i).  The field
    is quadratic in the state, so the tensor is constant; it feeds the
    directional second derivatives of the transcritical-bifurcation checks.
    """
    h = np.zeros((3, 3, 3))
    # f1 = alpha_i s i + alpha_a s a + p delta i - beta_a a i - delta_a a
    h[0, 0, 0] = -2.0 * params.alpha_a
    h[0, 0, 1] = h[0, 1, 0] = -params.alpha_a
    h[0, 0, 2] = h[0, 2, 0] = -params.alpha_i - params.alpha_a - params.beta_a
    h[0, 1, 2] = h[0, 2, 1] = -params.alpha_i
    h[0, 2, 2] = -2.0 * params.alpha_i
    # f2 = delta_a a + alpha_u s a + q delta i - beta_u u i - delta_u u
    h[1, 0, 0] = -2.0 * params.alpha_u
    h[1, 0, 1] = h[1, 1, 0] = -params.alpha_u
    h[1, 0, 2] = h[1, 2, 0] = -params.alpha_u
    h[1, 1, 2] = h[1, 2, 1] = -params.beta_u
    # f3 = (beta s + beta_a a + beta_u u - delta) i
    h[2, 0, 2] = h[2, 2, 0] = params.beta_a - params.beta
    h[2, 1, 2] = h[2, 2, 1] = params.beta_u - params.beta
    h[2, 2, 2] = -2.0 * params.beta
    return h


def saias_rhs(params: SaiasParams):
    """Closure ``(t, y) -> dy/dt`` for the adaptive integrator."""
    alpha_i, alpha_a, delta_a, p = params.alpha_i, params.alpha_a, params.delta_a, params.p
    beta, beta_a, delta = params.beta, params.beta_a, params.delta

    def rhs(t, y):
        a, i = y[0], y[1]
        s = 1.0 - a - i
        return np.array([
            alpha_i(i) * s * i + alpha_a(i) * s * a + p(i) * delta * i
            - beta_a * a * i - delta_a(i) * a,
            (beta * s + beta_a * a - delta) * i,
        ])

    return rhs


def sauisuas_rhs(params: SauisuasParams):
    """Closure ``(t, y) -> dy/dt`` for the adaptive integrator."""
    pv = tuple(params.as_vector())

    def rhs(t, y):
        return np.array(_field3(y[0], y[1], y[2], *pv))

    return rhs
