import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats
from scipy.integrate import quad

from condconv import positive
from condconv.errors import DomainError, ParameterError, RangeError
from condconv.positive import Exponential, Gamma, Lindley

GRID = [0.5, 1.0, 2.0, 5.0]


def all_specs():
    out = [Exponential(t) for t in GRID] + [Lindley(t) for t in GRID]
    out += [Gamma(a, k) for a in GRID for k in GRID]
    return out


def test_exponential_at_origin():
    assert positive.pdf(Exponential(1.0), 0.0) == 1.0
    assert positive.pdf(Exponential(1.0), 1e-300) == pytest.approx(1.0)


@pytest.mark.parametrize("x", [0.5, 1.0, 2.0])
def test_unit_shape_gamma_is_exponential(x):
    assert positive.pdf(Gamma(1.0, 1.0), x) == pytest.approx(positive.pdf(Exponential(1.0), x), rel=1e-15)


def test_lindley_at_origin():
    assert positive.pdf(Lindley(1.0), 0.0) == pytest.approx(0.5, rel=1e-15)


def test_exponential_cdf():
    assert positive.cdf(Exponential(1.0), 1.0) == pytest.approx(1 - math.exp(-1), rel=1e-15)


@pytest.mark.parametrize("spec", [Exponential(2.0), Gamma(1.5, 0.7), Lindley(0.3)])
def test_cdf_at_zero(spec):
    assert positive.cdf(spec, 0.0) == 0.0


def test_lindley_cdf_matches_integral():
    spec = Lindley(2.0)
    ref, _ = quad(lambda x: positive.pdf(spec, x), 0, 3, epsabs=1e-13, epsrel=1e-13)
    assert positive.cdf(spec, 3.0) == pytest.approx(ref, abs=1e-10)


@pytest.mark.parametrize("spec", all_specs(), ids=repr)
def test_pdf_integrates_to_one(spec):
    upper = 1.0
    while positive.cdf(spec, upper) <= 1 - 1e-13:
        upper *= 2
    ref, _ = quad(lambda x: positive.pdf(spec, x), 0, upper, epsabs=1e-13, epsrel=1e-13, limit=400)
    assert ref == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("spec", all_specs(), ids=repr)
def test_cdf_derivative_is_pdf(spec):
    h = 1e-6
    for x in (0.3, 1.0, 2.5):
        fd = (positive.cdf(spec, x + h) - positive.cdf(spec, x - h)) / (2 * h)
        assert fd == pytest.approx(positive.pdf(spec, x), rel=1e-5)


@pytest.mark.parametrize("spec", all_specs(), ids=repr)
def test_log_pdf_consistent(spec):
    x = np.linspace(0.01, 700 / spec.rate, 300)
    p = positive.pdf(spec, x)
    lp = positive.log_pdf(spec, x)
    mask = p > 1e-300
    np.testing.assert_allclose(np.exp(lp[mask]), p[mask], rtol=1e-12)
    assert np.all(np.isfinite(lp))


def test_against_scipy():
    x = np.linspace(0.05, 8, 40)
    np.testing.assert_allclose(positive.pdf(Gamma(1.7, 2.3), x), stats.gamma.pdf(x, 2.3, scale=1 / 1.7), rtol=1e-12)
    np.testing.assert_allclose(positive.cdf(Gamma(1.7, 2.3), x), stats.gamma.cdf(x, 2.3, scale=1 / 1.7), atol=1e-12)


@given(st.floats(0.1, 10), st.floats(0, 50), st.floats(0, 50))
def test_cdf_monotone(theta, a, b):
    lo, hi = sorted((a, b))
    for spec in (Exponential(theta), Lindley(theta), Gamma(theta, 2.5)):
        assert positive.cdf(spec, lo) <= positive.cdf(spec, hi) + 1e-15


def test_errors():
    with pytest.raises(ParameterError):
        Exponential(0.0)
    with pytest.raises(ParameterError):
        Gamma(1.0, -2.0)
    with pytest.raises(ParameterError):
        Lindley(float("nan"))
    with pytest.raises(DomainError):
        positive.pdf(Exponential(1.0), -0.1)
    with pytest.raises(DomainError):
        positive.pdf(Exponential(1.0), float("inf"))
    with pytest.raises(RangeError):
        positive.pdf(Gamma(1.0, 0.5), 0.0)
    assert positive.pdf(Gamma(1.0, 2.0), 0.0) == 0.0
