"""Inference for the LCG(beta) family and the Topp-Leone baseline.

Two maximum-likelihood routes are provided. ``mle_exact`` solves the true
score equation

    1/beta + 1/(1 + beta) - 1/(2 + beta) = T,   T = -mean(log(1 - u)),

i.e. the cubic ``T b^3 + (3T - 1) b^2 + (2T - 4) b - 2 = 0``.
``mle_paper_quadratic`` solves ``T b^2 + (3T - 1) b + (2T - 4) = 0``, which
drops a term but reproduces previously published estimates; it is kept
for reproduction only.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

import numpy as np

from .errors import DomainError, EmptyRequestError, EstimationError, ParameterError
from .families import LCG, UnitFamily

MOM = "MoM"
ML_PAPER = "ML-paper-quadratic"
ML_EXACT = "ML-exact"
ML_CLOSED = "ML"
ESTIMATORS = (MOM, ML_PAPER, ML_EXACT)

QUANTILE_EPS = 1e-15
_BISECTION_STEPS = 64


@dataclass(frozen=True)
class Dataset:
    """Named sample of observations strictly inside (0, 1)."""

    name: str
    values: tuple

    def __post_init__(self):
        vals = tuple(float(v) for v in self.values)
        if not vals:
            raise EmptyRequestError(f"dataset {self.name!r} is empty")
        bad = [v for v in vals if not (0.0 < v < 1.0)]
        if bad:
            raise DomainError(f"dataset {self.name!r} has values outside (0, 1): {bad[:5]}")
        object.__setattr__(self, "values", vals)

    @property
    def n(self) -> int:
        return len(self.values)

    def array(self) -> np.ndarray:
        return np.asarray(self.values, dtype=float)


DataLike = Union[Dataset, Sequence[float], np.ndarray]


def _as_array(data: DataLike) -> np.ndarray:
    if isinstance(data, Dataset):
        return data.array()
    return Dataset("sample", tuple(np.asarray(data, dtype=float).ravel())).array()


@dataclass(frozen=True)
class EstimationResult:
    estimate: float
    method: str
    score_residual: float
    candidate_roots: tuple = field(default_factory=tuple)


def _check_beta(beta: float) -> float:
    beta = float(beta)
    if not (beta > 0 and math.isfinite(beta)):
        raise ParameterError(f"beta must be finite and > 0, got {beta!r}")
    return beta


# --- distributional quantities -------------------------------------------------


def lcg_hazard(beta: float, u):
    """Hazard rate ``beta(1+beta)(1+u) / ((2+beta+u beta)(1-u))``."""
    beta = _check_beta(beta)
    arr = np.asarray(u, dtype=float)
    if np.any(~((arr >= 0) & (arr < 1))):
        raise DomainError("hazard requires 0 <= u < 1")
    out = beta * (1.0 + beta) * (1.0 + arr) / ((2.0 + beta + arr * beta) * (1.0 - arr))
    return float(out) if np.ndim(u) == 0 else out


def lcg_mean(beta: float) -> float:
    beta = _check_beta(beta)
    return (4.0 + beta) / (2.0 + beta) ** 2


def lcg_variance(beta: float) -> float:
    beta = _check_beta(beta)
    return beta * (16.0 + 9.0 * beta + beta * beta) / ((2.0 + beta) ** 4 * (3.0 + beta))


def _quantile_unchecked(v: np.ndarray, beta: float) -> np.ndarray:
    # bisection on (1-u)^b (2 + b + u b) - (1-v)(2+b), decreasing in u
    target = (1.0 - v) * (2.0 + beta)

    def h(u):
        return (1.0 - u) ** beta * (2.0 + beta + u * beta) - target

    lo = np.full_like(v, QUANTILE_EPS)
    hi = np.full_like(v, 1.0 - QUANTILE_EPS)
    below = h(lo) <= 0  # root left of the bracket: v is ~0
    above = h(hi) >= 0  # root right of the bracket: v is ~1
    for _ in range(_BISECTION_STEPS):
        mid = 0.5 * (lo + hi)
        pos = h(mid) > 0
        lo = np.where(pos, mid, lo)
        hi = np.where(pos, hi, mid)
    out = 0.5 * (lo + hi)
    out = np.where(below, QUANTILE_EPS, out)
    return np.where(above, 1.0 - QUANTILE_EPS, out)


def lcg_quantile(v, beta: float):
    """Inverse cdf by bisection on ``[1e-15, 1 - 1e-15]``."""
    beta = _check_beta(beta)
    arr = np.asarray(v, dtype=float)
    if np.any(~((arr > 0) & (arr < 1))):
        raise DomainError("quantile level must lie in (0, 1)")
    out = _quantile_unchecked(np.atleast_1d(arr), beta)
    return float(out[0]) if np.ndim(v) == 0 else out.reshape(arr.shape)


def lcg_sample(n: int, beta: float, seed=None, rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """``n`` draws by cdf inversion of PCG64 uniforms.

    Pass either ``seed`` (anything ``np.random.default_rng`` accepts) or an
    existing generator; a generator must not be shared between workers.
    """
    if int(n) != n or n < 1:
        raise EmptyRequestError(f"sample size must be a positive integer, got {n!r}")
    beta = _check_beta(beta)
    gen = rng if rng is not None else np.random.default_rng(seed)
    return _quantile_unchecked(gen.random(int(n)), beta)


# --- likelihood ----------------------------------------------------------------


def t_statistic(data: DataLike) -> float:
    """``T(u) = -mean(log(1 - u))``."""
    return float(-np.mean(np.log1p(-_as_array(data))))


def lcg_score(beta: float, data: DataLike) -> float:
    """Derivative of the LCG log-likelihood in ``beta``."""
    u = _as_array(data)
    beta = _check_beta(beta)
    n = u.size
    return n * (1.0 / beta + 1.0 / (1.0 + beta) - 1.0 / (2.0 + beta)) + float(np.sum(np.log1p(-u)))


def lcg_loglik(beta: float, data: DataLike) -> float:
    u = _as_array(data)
    beta = _check_beta(beta)
    n = u.size
    return (
        n * (math.log(beta) + math.log1p(beta) - math.log(2.0 + beta))
        + float(np.sum(np.log1p(u)))
        + (beta - 1.0) * float(np.sum(np.log1p(-u)))
    )


def log_likelihood(fam: UnitFamily, data: DataLike) -> float:
    """Sum of log densities; ``-inf`` (with a warning) if any density is 0."""
    u = _as_array(data)
    with np.errstate(divide="ignore"):
        logs = np.asarray(fam.logpdf(u), dtype=float)
    if np.any(np.isneginf(logs)):
        idx = np.flatnonzero(np.isneginf(logs))
        warnings.warn(f"{fam.name} density is zero at observations {idx[:5].tolist()}", RuntimeWarning)
        return -math.inf
    return float(np.sum(logs))


def aic(fam: UnitFamily, data: DataLike, k: Optional[int] = None) -> float:
    """Akaike information criterion ``2k - 2 loglik``."""
    k = fam.n_params if k is None else k
    return 2.0 * k - 2.0 * log_likelihood(fam, data)


# --- estimators ----------------------------------------------------------------


def _largest_real_part(coeffs: Iterable[float]) -> tuple[float, tuple]:
    # mirrors max(Re(polyroot(.))): largest real part wins, then positivity is checked
    roots = np.roots(list(coeffs))
    candidates = tuple(sorted((float(r.real) for r in roots), reverse=True))
    return candidates[0], candidates


def mom_estimate(data: DataLike) -> EstimationResult:
    """Solve ``ubar b^2 + (4 ubar - 1) b + 4(ubar - 1) = 0`` for the moment estimate."""
    u = _as_array(data)
    ubar = float(np.mean(u))
    best, cands = _largest_real_part([ubar, 4.0 * ubar - 1.0, 4.0 * (ubar - 1.0)])
    if not best > 0:
        raise EstimationError(f"moment equation has no positive root (ubar={ubar})")
    return EstimationResult(best, MOM, lcg_score(best, u), cands)


def mle_paper_quadratic(data: DataLike) -> EstimationResult:
    """Largest root of ``T b^2 + (3T - 1) b + (2T - 4) = 0``.

    Not the score equation; ``score_residual`` reports how far off it is.
    """
    u = _as_array(data)
    t = t_statistic(u)
    best, cands = _largest_real_part([t, 3.0 * t - 1.0, 2.0 * t - 4.0])
    if not best > 0:
        raise EstimationError(f"quadratic has no positive root (T={t})")
    return EstimationResult(best, ML_PAPER, lcg_score(best, u), cands)


def _score_rhs(beta: float) -> float:
    return 1.0 / beta + 1.0 / (1.0 + beta) - 1.0 / (2.0 + beta)


def mle_exact(data: DataLike) -> EstimationResult:
    """Unique positive root of the LCG score equation.

    The left side ``1/b + 1/(1+b) - 1/(2+b)`` falls strictly from +inf to 0,
    and lies between ``1/b`` and ``2/b``, so the root is bracketed by
    ``[1/T, 2/T]`` and found by bisection.
    """
    u = _as_array(data)
    t = t_statistic(u)
    cands = tuple(
        sorted(float(r.real) for r in np.roots([t, 3.0 * t - 1.0, 2.0 * t - 4.0, -2.0]) if abs(r.imag) < 1e-9)
    )
    lo, hi = 1.0 / t, 2.0 / t
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        if mid in (lo, hi):
            break
        if _score_rhs(mid) > t:
            lo = mid
        else:
            hi = mid
    lo_res, hi_res = abs(_score_rhs(lo) - t), abs(_score_rhs(hi) - t)
    est = lo if lo_res <= hi_res else hi
    return EstimationResult(est, ML_EXACT, lcg_score(est, u), cands)


def topp_leone_mle(data: DataLike) -> EstimationResult:
    """Closed form ``nu = -n / sum(log(u (2 - u)))``."""
    u = _as_array(data)
    s = float(np.sum(np.log(u) + np.log1p(1.0 - u)))
    nu = -u.size / s
    # score: n/nu + s
    return EstimationResult(nu, ML_CLOSED, u.size / nu + s, (nu,))


ESTIMATOR_FUNCS = {MOM: mom_estimate, ML_PAPER: mle_paper_quadratic, ML_EXACT: mle_exact}


def estimate(data: DataLike, method: str = ML_EXACT) -> EstimationResult:
    try:
        func = ESTIMATOR_FUNCS[method]
    except KeyError:
        raise ParameterError(f"unknown estimator {method!r}; choose from {list(ESTIMATOR_FUNCS)}") from None
    return func(data)


def fitted_family(result: EstimationResult) -> UnitFamily:
    return LCG(result.estimate)
