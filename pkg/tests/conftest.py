"""Shared parameter sets and random-draw protocols for the test suite."""

import numpy as np
import pytest

from awaredyn import RateFunction, SaiasParams, SauisuasParams

RATE_FAMILIES = ("constant", "linear", "reciprocal")


def fig1_saias(delta_a0: float) -> SaiasParams:
    """The 2-D phase-portrait setting: linear alert/info rates, reciprocal
    awareness decay, three decay scales giving the three equilibrium layouts."""
    return SaiasParams(
        beta=10.0, beta_a=1.0, delta=4.0,
        alpha_i=RateFunction.linear(6.0),
        alpha_a=RateFunction.linear(4.0),
        delta_a=RateFunction.reciprocal(delta_a0),
        p=RateFunction.linear(0.05),
    )


def hopf_base(alpha_u: float = 1.0, p: float = 0.05, q: float = 0.05) -> SauisuasParams:
    """The 3-D base setting used by most Hopf figures."""
    return SauisuasParams(
        beta=3.0, beta_a=0.2, beta_u=0.5, delta=1.0,
        delta_a=0.01, delta_u=0.05, alpha_i=0.05,
        alpha_a=0.012, alpha_u=alpha_u, p=p, q=q,
    )


def oscillating_q1_base() -> SauisuasParams:
    """The all-unwilling-on-recovery setting (p=0, q=1) with fast contact
    unwillingness; sustains oscillations across the whole (p, q) simplex."""
    return SauisuasParams(
        beta=3.0, beta_a=0.2, beta_u=0.4, delta=1.7,
        delta_a=0.01, delta_u=0.05, alpha_i=0.05,
        alpha_a=0.012, alpha_u=30.0, p=0.0, q=1.0,
    )


def transcritical_base(alpha_a: float) -> SauisuasParams:
    """The beta_a-sweep setting of the transcritical diagrams."""
    return SauisuasParams(
        beta=2.0, beta_a=0.75, beta_u=1.0, delta=1.0,
        delta_a=0.01, delta_u=0.05, alpha_i=0.8,
        alpha_a=alpha_a, alpha_u=0.1, p=0.1, q=0.3,
    )


def random_rate(rng, lo: float, hi: float) -> RateFunction:
    return RateFunction(rng.choice(RATE_FAMILIES), float(rng.uniform(lo, hi)))


def random_saias_params(rng) -> SaiasParams:
    beta = float(rng.uniform(0.5, 6.0))
    return SaiasParams(
        beta=beta,
        beta_a=float(rng.uniform(0.0, 0.9)) * beta,
        delta=float(rng.uniform(0.2, 5.0)),
        alpha_i=random_rate(rng, 0.0, 4.0),
        alpha_a=random_rate(rng, 0.05, 4.0),
        delta_a=random_rate(rng, 0.05, 4.0),
        p=random_rate(rng, 0.0, 0.5),
    )


def random_sauisuas_params(rng, r0a_above_one=None) -> SauisuasParams:
    if r0a_above_one is None:
        alpha_a = float(rng.uniform(0.01, 2.0))
        delta_a = float(rng.uniform(0.01, 2.0))
    elif r0a_above_one:
        delta_a = float(rng.uniform(0.01, 1.0))
        alpha_a = delta_a * float(rng.uniform(1.05, 5.0))
    else:
        alpha_a = float(rng.uniform(0.01, 1.0))
        delta_a = alpha_a * float(rng.uniform(1.05, 5.0))
    beta = float(rng.uniform(0.5, 4.0))
    p = float(rng.uniform(0.0, 1.0))
    return SauisuasParams(
        beta=beta,
        beta_a=float(rng.uniform(0.0, 0.9)) * beta,
        beta_u=float(rng.uniform(0.0, 0.9)) * beta,
        delta=float(rng.uniform(0.2, 3.0)),
        delta_a=delta_a,
        delta_u=float(rng.uniform(0.01, 1.0)),
        alpha_i=float(rng.uniform(0.01, 1.5)),
        alpha_a=alpha_a,
        alpha_u=float(rng.uniform(0.05, 3.0)),
        p=p,
        q=float(rng.uniform(0.0, 1.0 - p)),
    )


def random_state2(rng) -> tuple[float, float]:
    a = float(rng.uniform(0.0, 1.0))
    i = float(rng.uniform(0.0, 1.0 - a))
    return a, i


def random_state3(rng) -> tuple[float, float, float]:
    a = float(rng.uniform(0.0, 1.0))
    u = float(rng.uniform(0.0, 1.0 - a))
    i = float(rng.uniform(0.0, 1.0 - a - u))
    return a, u, i


@pytest.fixture
def rng():
    return np.random.default_rng(20260809)
