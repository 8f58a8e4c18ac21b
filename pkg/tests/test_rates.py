import numpy as np
import pytest
from hypothesis import given, strategies as st

from awaredyn import ConfigError, InvalidInputError, RateFunction


@given(c=st.floats(min_value=0.0, max_value=10.0),
       i=st.floats(min_value=0.0, max_value=1.0))
def test_family_formulas(c, i):
    assert RateFunction.constant(c)(i) == c
    assert RateFunction.linear(c)(i) == c * (1.0 + i)
    assert RateFunction.reciprocal(c)(i) == c / (1.0 + i)


def test_formulas_on_1000_random_samples():
    rng = np.random.default_rng(7)
    for _ in range(1000):
        c = float(rng.uniform(0.0, 10.0))
        i = float(rng.uniform(0.0, 1.0))
        family = rng.choice(["constant", "linear", "reciprocal"])
        rate = RateFunction(family, c)
        expected = {"constant": c, "linear": c * (1 + i), "reciprocal": c / (1 + i)}[family]
        assert rate(i) == pytest.approx(expected, rel=1e-15)
        assert rate(i) >= 0.0
        assert np.isfinite(rate(i))


@pytest.mark.parametrize("family", ["constant", "linear", "reciprocal"])
def test_derivative_matches_central_difference(family, rng):
    h = 1e-6
    for _ in range(50):
        c = float(rng.uniform(0.0, 5.0))
        i = float(rng.uniform(h, 1.0 - h))
        rate = RateFunction(family, c)
        fd = (rate(i + h) - rate(i - h)) / (2.0 * h)
        exact = rate.derivative(i)
        assert abs(fd - exact) <= 1e-6 * max(1.0, abs(exact))


def test_max_on_unit_interval():
    assert RateFunction.constant(2.0).max_on_unit_interval() == 2.0
    assert RateFunction.linear(2.0).max_on_unit_interval() == 4.0
    assert RateFunction.reciprocal(2.0).max_on_unit_interval() == 2.0


def test_parse_round_trip():
    rate = RateFunction.parse("linear:4.0")
    assert rate == RateFunction.linear(4.0)
    assert RateFunction.parse(rate.spec_string()) == rate


@pytest.mark.parametrize("spec", ["linear", "linear:4:5", "cubic:1", "linear:abc"])
def test_parse_rejects_malformed(spec):
    with pytest.raises(ConfigError):
        RateFunction.parse(spec)


def test_rejects_bad_construction():
    with pytest.raises(InvalidInputError):
        RateFunction("quadratic", 1.0)
    with pytest.raises(InvalidInputError):
        RateFunction.constant(-0.5)
    with pytest.raises(InvalidInputError):
        RateFunction.linear(float("nan"))
