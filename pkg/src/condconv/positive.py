"""Positive-support marginal laws: exponential, gamma and Lindley.

All evaluators accept scalars or numpy arrays and return the same shape.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from .errors import DomainError, ParameterError, RangeError
from .special import gammainc_lower

ArrayLike = Union[float, np.ndarray]

_gamma_cdf_vec = np.vectorize(gammainc_lower, otypes=[float])


def _positive(name: str, value: float) -> float:
    value = float(value)
    if not (value > 0 and math.isfinite(value)):
        raise ParameterError(f"{name} must be finite and > 0, got {value!r}")
    return value


@dataclass(frozen=True)
class Exponential:
    """Exponential law with rate ``theta``: ``theta * exp(-theta x)``."""

    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", _positive("theta", self.theta))

    @property
    def rate(self) -> float:
        return self.theta


@dataclass(frozen=True)
class Gamma:
    """Gamma law with rate ``alpha`` and shape ``shape``.

    Density ``alpha**shape x**(shape-1) exp(-alpha x) / Gamma(shape)``.
    """

    alpha: float
    shape: float

    def __post_init__(self):
        object.__setattr__(self, "alpha", _positive("alpha", self.alpha))
        object.__setattr__(self, "shape", _positive("shape", self.shape))

    @property
    def rate(self) -> float:
        return self.alpha


@dataclass(frozen=True)
class Lindley:
    """Lindley law: ``theta**2 (1 + x) exp(-theta x) / (1 + theta)``."""

    theta: float

    def __post_init__(self):
        object.__setattr__(self, "theta", _positive("theta", self.theta))

    @property
    def rate(self) -> float:
        return self.theta


PositiveDistSpec = Union[Exponential, Gamma, Lindley]


def _as_support(x: ArrayLike) -> np.ndarray:
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise DomainError("evaluation point must be finite")
    if np.any(arr < 0):
        raise DomainError("evaluation point must be >= 0 (positive support)")
    return arr


def _out(arr: np.ndarray, x: ArrayLike):
    return float(arr) if np.ndim(x) == 0 else arr


def log_pdf(spec: PositiveDistSpec, x: ArrayLike):
    """Natural log of the density; ``-inf`` where the density is 0.

    At ``x = 0`` the right limit is returned. A gamma law with shape < 1
    has an infinite density there, which raises :class:`RangeError`.
    """
    arr = _as_support(x)
    if isinstance(spec, Exponential):
        out = math.log(spec.theta) - spec.theta * arr
    elif isinstance(spec, Lindley):
        out = 2.0 * math.log(spec.theta) + np.log1p(arr) - spec.theta * arr - math.log1p(spec.theta)
    elif isinstance(spec, Gamma):
        a, k = spec.alpha, spec.shape
        zero = arr == 0
        if k < 1 and np.any(zero):
            raise RangeError("gamma density with shape < 1 is infinite at x = 0")
        with np.errstate(divide="ignore"):
            logx = np.log(np.where(zero, 1.0, arr))
        out = k * math.log(a) - math.lgamma(k) - a * arr + (k - 1.0) * logx
        if k > 1:
            out = np.where(zero, -np.inf, out)
    else:
        raise ParameterError(f"unknown marginal spec {spec!r}")
    return _out(np.asarray(out, dtype=float), x)


def pdf(spec: PositiveDistSpec, x: ArrayLike):
    """Density of a positive marginal at ``x``."""
    return _out(np.exp(np.asarray(log_pdf(spec, x))), x)


def cdf(spec: PositiveDistSpec, x: ArrayLike):
    """Cumulative distribution function of a positive marginal."""
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)) or np.any(arr < 0):
        raise DomainError("cdf argument must be >= 0")
    if isinstance(spec, Exponential):
        out = -np.expm1(-spec.theta * arr)
    elif isinstance(spec, Lindley):
        t = spec.theta
        with np.errstate(invalid="ignore"):
            out = -np.expm1(-t * arr) - (t * arr / (1.0 + t)) * np.exp(-t * arr)
        out = np.where(np.isinf(arr), 1.0, out)
    elif isinstance(spec, Gamma):
        out = _gamma_cdf_vec(spec.shape, spec.alpha * arr)
    else:
        raise ParameterError(f"unknown marginal spec {spec!r}")
    return _out(np.asarray(out, dtype=float), x)
