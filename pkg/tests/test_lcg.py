import math
import warnings

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy import stats

from condconv import datasets
from condconv.errors import DomainError, EmptyRequestError, ParameterError
from condconv.families import LCG, Dist3, ToppLeone, Uniform
from condconv.lcg import (
    ML_EXACT,
    ML_PAPER,
    MOM,
    Dataset,
    aic,
    estimate,
    fitted_family,
    lcg_hazard,
    lcg_loglik,
    lcg_mean,
    lcg_quantile,
    lcg_sample,
    lcg_score,
    lcg_variance,
    log_likelihood,
    mle_exact,
    mle_paper_quadratic,
    mom_estimate,
    t_statistic,
    topp_leone_mle,
)

BETAS = [0.5, 1.0, 2.0, 7.8, 15.0]


def mp_lcg_moment(beta, k):
    # independent oracle: the density written out in mpmath
    b = mpmath.mpf(beta)
    c = b * (1 + b) / (2 + b)
    with mpmath.workdps(40):
        return float(mpmath.quad(lambda u: u**k * c * (1 + u) * (1 - u) ** (b - 1), [0, 0.5, 1]))


def data_with_t(t, n=12):
    """Synthetic sample whose T statistic is exactly ``t`` up to rounding."""
    u = -math.expm1(-t)
    return np.full(n, u)


# --- hazard, moments ---------------------------------------------------------------


def test_hazard_examples():
    assert lcg_hazard(2.0, 0.0) == pytest.approx(1.5, abs=1e-15)
    assert lcg_hazard(1.0, 0.5) == pytest.approx(6 / 3.5, abs=1e-15)


@pytest.mark.parametrize("beta", BETAS)
def test_hazard_identity(beta):
    fam = LCG(beta)
    u = np.linspace(0.01, 0.95, 60)
    np.testing.assert_allclose(lcg_hazard(beta, u), fam.pdf(u) / fam.sf(u), rtol=1e-12)


@pytest.mark.parametrize("beta", BETAS)
def test_sf_complements_cdf(beta):
    fam = LCG(beta)
    for u in (0.0, 0.1, 0.5, 0.9, 1.0):
        assert fam.sf(u) + fam.cdf(u) == pytest.approx(1.0, abs=1e-14)


@pytest.mark.parametrize("beta", BETAS)
def test_hazard_increasing(beta):
    h = lcg_hazard(beta, np.linspace(0, 0.999, 400))
    assert np.all(np.diff(h) > 0)


def test_hazard_domain():
    with pytest.raises(DomainError):
        lcg_hazard(2.0, 1.0)
    with pytest.raises(ParameterError):
        lcg_hazard(0.0, 0.5)


def test_moment_examples():
    assert lcg_mean(2.0) == pytest.approx(0.375, abs=1e-15)
    assert lcg_variance(1.0) == pytest.approx(13 / 162, abs=1e-15)


@pytest.mark.parametrize("beta", BETAS)
def test_moments_match_quadrature(beta):
    m1, m2 = mp_lcg_moment(beta, 1), mp_lcg_moment(beta, 2)
    assert abs(lcg_mean(beta) - m1) <= 1e-10
    assert abs(lcg_variance(beta) - (m2 - m1 * m1)) <= 1e-10


@pytest.mark.parametrize("beta", BETAS)
def test_cdf_differentiates_to_pdf(beta):
    fam, h = LCG(beta), 1e-6
    for u in (0.1, 0.3, 0.5, 0.7, 0.9):
        pdf = float(fam.pdf(u))
        if fam.sf(u) >= 1e-3:
            deriv = (fam.cdf(u + h) - fam.cdf(u - h)) / (2 * h)
            assert abs(deriv / pdf - 1) <= 1e-5
        deriv = (fam.sf(u - h) - fam.sf(u + h)) / (2 * h)
        assert abs(deriv / pdf - 1) <= 1e-5


# --- quantile, sampling -----------------------------------------------------------


def test_quantile_example():
    assert lcg_quantile(0.6875, 2.0) == pytest.approx(0.5, abs=1e-12)


@pytest.mark.parametrize("beta", [0.5, 2.3, 15.0])
@pytest.mark.parametrize("v", [0.01, 0.25, 0.5, 0.75, 0.99])
def test_quantile_round_trip(beta, v):
    assert abs(LCG(beta).cdf(lcg_quantile(v, beta)) - v) <= 1e-10


@given(st.floats(1e-3, 1 - 1e-3), st.floats(0.2, 30.0))
def test_quantile_round_trip_property(v, beta):
    assert abs(LCG(beta).cdf(lcg_quantile(v, beta)) - v) <= 1e-10


def test_quantile_endpoints():
    assert lcg_quantile(1e-300, 2.0) < 1e-14
    assert lcg_quantile(1 - 1e-16, 2.0) > 1 - 1e-7
    with pytest.raises(DomainError):
        lcg_quantile(0.0, 2.0)
    with pytest.raises(DomainError):
        lcg_quantile(1.0, 2.0)


def test_quantile_vectorized_shape():
    v = np.array([[0.1, 0.2], [0.3, 0.4]])
    out = lcg_quantile(v, 2.3)
    assert out.shape == v.shape
    assert out[0, 1] == lcg_quantile(0.2, 2.3)


def test_sample_deterministic():
    a = lcg_sample(500, 7.8, seed=11)
    b = lcg_sample(500, 7.8, seed=11)
    assert a.tobytes() == b.tobytes()
    assert lcg_sample(500, 7.8, seed=12).tobytes() != a.tobytes()


def test_sample_with_generator():
    a = lcg_sample(50, 2.0, rng=np.random.default_rng(3))
    np.testing.assert_array_equal(a, lcg_sample(50, 2.0, seed=3))


def test_sample_mean_clt_band():
    x = lcg_sample(100_000, 2.0, seed=1)
    assert abs(x.mean() - 0.375) <= 3 * math.sqrt(lcg_variance(2.0) / x.size)
    assert np.all((x > 0) & (x < 1))


def test_sample_ks():
    n, beta = 10_000, 7.8
    x = lcg_sample(n, beta, seed=2021)
    fam = LCG(beta)
    ks = stats.kstest(x, lambda q: np.array([fam.cdf(v) for v in np.atleast_1d(q)])).statistic
    assert ks < 1.63 / math.sqrt(n)


def test_sample_errors():
    with pytest.raises(EmptyRequestError):
        lcg_sample(0, 2.0, seed=1)
    with pytest.raises(ParameterError):
        lcg_sample(5, -1.0, seed=1)


# --- datasets ----------------------------------------------------------------------


def test_dataset_validation():
    with pytest.raises(EmptyRequestError):
        Dataset("x", ())
    with pytest.raises(DomainError):
        Dataset("x", (0.5, 1.0))
    d = Dataset("x", [0.25, 0.5])
    assert d.n == 2 and d.values == (0.25, 0.5)


def test_t_statistic():
    assert t_statistic([0.5]) == pytest.approx(math.log(2), abs=1e-15)


# --- estimators --------------------------------------------------------------------


def test_mom_example():
    # 0.375 b^2 + 0.5 b - 2.5 = (b - 2)(0.375 b + 1.25)
    assert mom_estimate([0.375] * 4).estimate == pytest.approx(2.0, abs=1e-12)


@pytest.mark.parametrize("beta", [0.5, 2.3, 7.8, 15.0])
def test_mom_inverts_mean(beta):
    assert abs(mom_estimate([lcg_mean(beta)]).estimate - beta) <= 1e-10


@given(st.lists(st.floats(1e-6, 1 - 1e-6), min_size=1, max_size=30))
def test_mom_always_positive(values):
    # constant term 4(ubar - 1) < 0, so a positive root always exists
    res = mom_estimate(values)
    assert res.estimate > 0
    assert lcg_mean(res.estimate) == pytest.approx(float(np.mean(values)), rel=1e-9)


def test_quadratic_is_not_the_score():
    t = 7 / 12
    assert t * 4 + (3 * t - 1) * 2 + (2 * t - 4) == pytest.approx(1.0, abs=1e-15)
    res = mle_paper_quadratic(data_with_t(t))
    assert abs(res.estimate - 2.0) > 0.1
    assert abs(res.score_residual) > 1e-3


def test_exact_mle_at_seven_twelfths():
    res = mle_exact(data_with_t(7 / 12))
    assert res.estimate == pytest.approx(2.0, abs=1e-12)
    assert any(abs(r - 2.0) < 1e-9 for r in res.candidate_roots)


@pytest.mark.parametrize("name", ["SC16", "P3"])
def test_exact_score_residual(name):
    data = datasets.builtin_dataset(name)
    res = mle_exact(data)
    assert abs(lcg_score(res.estimate, data)) <= 1e-8 * (1 + data.n)


@given(st.lists(st.floats(1e-4, 1 - 1e-4), min_size=1, max_size=50))
def test_exact_score_residual_property(values):
    res = mle_exact(values)
    assert res.estimate > 0
    assert abs(lcg_score(res.estimate, values)) <= 1e-8 * (1 + len(values))


@pytest.mark.parametrize("beta", [0.4, 1.0, 2.3, 7.8, 15.0])
def test_score_matches_finite_difference(beta):
    data = datasets.builtin_dataset("SC16")
    h = 1e-6
    fd = (lcg_loglik(beta + h, data) - lcg_loglik(beta - h, data)) / (2 * h)
    assert fd == pytest.approx(lcg_score(beta, data), rel=1e-4)


@pytest.mark.parametrize("name", ["SC16", "P3"])
def test_loglik_matches_family(name):
    data = datasets.builtin_dataset(name)
    assert lcg_loglik(1.7, data) == pytest.approx(log_likelihood(LCG(1.7), data), abs=1e-12)


@pytest.mark.parametrize("name", ["SC16", "P3"])
def test_exact_mle_dominates(name):
    data = datasets.builtin_dataset(name)
    best = lcg_loglik(mle_exact(data).estimate, data)
    assert best >= lcg_loglik(mle_paper_quadratic(data).estimate, data)
    assert best >= lcg_loglik(mom_estimate(data).estimate, data)


def test_exact_mle_local_max():
    data = datasets.builtin_dataset("SC16")
    b = mle_exact(data).estimate
    ll = lcg_loglik(b, data)
    assert ll >= lcg_loglik(b + 1e-3, data) and ll >= lcg_loglik(b - 1e-3, data)


def test_exact_mle_consistent():
    x = lcg_sample(10_000, 2.3, seed=5)
    assert abs(mle_exact(x).estimate - 2.3) < 0.1


@pytest.mark.parametrize("name,expected", [("SC16", 1.9876), ("P3", 1.8646)])
def test_quadratic_reference_estimates(name, expected):
    assert mle_paper_quadratic(datasets.builtin_dataset(name)).estimate == pytest.approx(expected, abs=1e-3)


def test_mom_on_sc16():
    b = mom_estimate(datasets.builtin_dataset("SC16")).estimate
    assert math.isfinite(b) and b > 0


def test_estimate_dispatch():
    data = datasets.builtin_dataset("P3")
    assert estimate(data, MOM) == mom_estimate(data)
    assert estimate(data, ML_PAPER) == mle_paper_quadratic(data)
    assert estimate(data) == mle_exact(data)
    assert fitted_family(mle_exact(data)) == LCG(mle_exact(data).estimate)
    with pytest.raises(ParameterError):
        estimate(data, "bayes")


@pytest.mark.parametrize("name,expected", [("SC16", 0.5943), ("P3", 0.6778)])
def test_topp_leone_published(name, expected):
    assert topp_leone_mle(datasets.builtin_dataset(name)).estimate == pytest.approx(expected, abs=1e-3)


def test_topp_leone_single_observation():
    u = 1 - math.sqrt(1 - math.exp(-1))  # u(2 - u) = e^-1
    assert topp_leone_mle([u]).estimate == pytest.approx(1.0, abs=1e-12)


def test_topp_leone_score_zero():
    res = topp_leone_mle(datasets.builtin_dataset("P3"))
    assert abs(res.score_residual) < 1e-9


# --- likelihood, AIC ---------------------------------------------------------------


def test_uniform_loglik_zero():
    data = datasets.builtin_dataset("SC16")
    assert log_likelihood(Uniform(), data) == 0.0
    assert aic(Uniform(), data) == 0.0


def test_aic_convention():
    data = datasets.builtin_dataset("P3")
    fam = ToppLeone(0.6778)
    assert aic(fam, data) == 2 - 2 * log_likelihood(fam, data)
    assert aic(fam, data, k=3) == 6 - 2 * log_likelihood(fam, data)
    assert aic(Dist3(), data) == -2 * log_likelihood(Dist3(), data)


def test_loglik_published_sc16():
    assert log_likelihood(LCG(1.9876), datasets.builtin_dataset("SC16")) == pytest.approx(2.9459, abs=2e-3)


def test_zero_density_gives_minus_inf():
    class Zero(Uniform):
        def logpdf(self, u):
            return np.full(np.shape(u), -np.inf)

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        assert log_likelihood(Zero(), [0.5]) == -math.inf
    assert any(issubclass(w.category, RuntimeWarning) for w in caught)
