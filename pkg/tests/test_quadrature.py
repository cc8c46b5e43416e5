import math

import numpy as np
import pytest

from condconv.errors import ParameterError, QuadratureError
from condconv.quadrature import QuadratureConfig, cdf_by_quadrature, integrate, integrate_unit


def test_polynomial():
    value, err = integrate_unit(lambda v, w: 3 * v**2)
    assert value == pytest.approx(1.0, abs=1e-14)
    assert err <= 1e-10


@pytest.mark.parametrize("a,b", [(0.5, 0.5), (0.1, 1.0), (1.0, 0.05), (3.0, 0.2)])
def test_endpoint_singularities(a, b):
    value, _ = integrate_unit(lambda v, w: v ** (a - 1) * w ** (b - 1))
    exact = math.exp(math.lgamma(a) + math.lgamma(b) - math.lgamma(a + b))
    assert value == pytest.approx(exact, rel=1e-11)


def test_tiny_integral_keeps_relative_accuracy():
    value, _ = integrate_unit(lambda v, w: 1e-12 * np.exp(-v))
    assert value == pytest.approx(1e-12 * (1 - math.exp(-1)), rel=1e-12)


def test_integrate_general_interval():
    assert integrate(np.exp, 0.0, 3.0) == pytest.approx(math.e**3 - 1, rel=1e-13)
    assert integrate(np.exp, 3.0, 0.0) == pytest.approx(-(math.e**3 - 1), rel=1e-13)
    assert integrate(np.exp, 1.0, 1.0) == 0.0


def test_non_convergence_reports_estimate():
    cfg = QuadratureConfig(abs_tol=1e-300, rel_tol=1e-300, max_level=4)
    with pytest.raises(QuadratureError) as info:
        integrate_unit(lambda v, w: np.sin(40 * v), cfg)
    assert math.isfinite(info.value.estimate)
    assert info.value.error > 0


def test_non_finite_integrand_raises():
    with pytest.raises(QuadratureError):
        integrate_unit(lambda v, w: np.full_like(v, np.nan))


def test_bad_config():
    with pytest.raises(ParameterError):
        QuadratureConfig(abs_tol=0.0)
    with pytest.raises(ParameterError):
        QuadratureConfig(min_level=5, max_level=2)


@pytest.mark.parametrize("u", [0.0, 0.1, 0.5, 0.7, 0.999, 1.0])
def test_cdf_by_quadrature_uniform_sqrt(u):
    # density 0.5 / sqrt(1 - v): cdf 1 - sqrt(1 - u)
    f = lambda v, w: 0.5 / np.sqrt(w)
    assert cdf_by_quadrature(f, u) == pytest.approx(1 - math.sqrt(1 - u), abs=1e-12)
