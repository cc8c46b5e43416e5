"""Closed-form unit-interval families obtained by conditioning on ``X + Y = 1``.

Each family is a frozen dataclass with ``pdf``, ``logpdf``, ``cdf`` and
``generating_joint``. Densities are evaluated from the pair ``(u, 1 - u)``
so that factors like ``(1 - u)**(b - 1)`` keep full precision near 1.

Families indexed by a rate difference ``delta`` switch to their ``delta = 0``
form when ``|delta| < DELTA_THRESHOLD``; their normalizers are otherwise
summed as power series for ``|delta| < 0.5``, where the closed forms cancel.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, fields
from typing import ClassVar

import numpy as np

from .errors import DomainError, ParameterError, RangeError, UnsupportedFamilyError
from .joint import JointSpec
from .positive import Exponential, Gamma, Lindley
from .quadrature import DEFAULT_CONFIG, cdf_by_quadrature
from .special import log_unit_gamma_integral

DELTA_THRESHOLD = 1e-8
_SERIES_RADIUS = 0.5


def _real(name, value):
    value = float(value)
    if not math.isfinite(value):
        raise ParameterError(f"{name} must be a finite real, got {value!r}")
    return value


def _positive(name, value):
    value = float(value)
    if not (value > 0 and math.isfinite(value)):
        raise ParameterError(f"{name} must be finite and > 0, got {value!r}")
    return value


def _xlog(a: float, x):
    """``a * log(x)`` with the convention ``0 * log(0) = 0``."""
    if a == 0.0:
        return np.zeros_like(np.asarray(x, dtype=float))
    return a * np.log(x)


def _rates_for_difference(delta: float) -> tuple[float, float]:
    # (first, second) rates with first - second = delta, the smaller one equal to 1
    second = 1.0 + max(0.0, -delta)
    return second + delta, second


def _log_poly_exp_integral(coeffs, delta: float) -> float:
    """log of ``int_0^1 p(u) exp(-delta u) du`` with ``p(u) = sum_j coeffs[j] u**j``."""
    if abs(delta) < _SERIES_RADIUS:
        total, term = 0.0, 1.0
        for k in range(60):
            moment = sum(c / (k + j + 1) for j, c in enumerate(coeffs))
            total += term * moment
            term *= -delta / (k + 1)
            if abs(term) < 1e-18:
                break
        return math.log(total)
    # int_0^1 u^j e^{-d u} du = j!/d^{j+1} (1 - e^{-d} sum_{i<=j} d^i/i!);
    # factored as e^{-shift} * positive_bracket to avoid overflow for d << 0
    shift = min(delta, 0.0)
    total = 0.0
    for j, c in enumerate(coeffs):
        partial = sum(delta**i / math.factorial(i) for i in range(j + 1))
        piece = (math.exp(shift) - math.exp(shift - delta) * partial) * math.factorial(j) / delta ** (j + 1)
        total += c * piece
    return math.log(total) - shift


class UnitFamily:
    """Common interface; subclasses implement ``_logpdf_pair``."""

    name: ClassVar[str] = ""
    n_params: ClassVar[int] = 0

    def _logpdf_pair(self, u, w):
        raise NotImplementedError

    def _check_u(self, u):
        arr = np.asarray(u, dtype=float)
        if np.any(~((arr >= 0) & (arr <= 1))):
            raise DomainError("family density requires 0 <= u <= 1")
        return arr

    def logpdf(self, u):
        """Log density; at ``u`` in {0, 1} the one-sided limit (``-inf`` where it vanishes)."""
        arr = self._check_u(u)
        with np.errstate(divide="ignore"):
            out = np.asarray(self._logpdf_pair(arr, 1.0 - arr), dtype=float)
        if np.any(np.isposinf(out)):
            raise RangeError(f"{self!r} density is unbounded at an endpoint")
        return float(out) if np.ndim(u) == 0 else out

    def pdf(self, u):
        out = np.exp(self.logpdf(u))
        return float(out) if np.ndim(u) == 0 else out

    def pdf_pair(self, u, w):
        """Density from ``u`` and an independently accurate ``w = 1 - u``."""
        return np.exp(self._logpdf_pair(np.asarray(u, float), np.asarray(w, float)))

    def _closed_cdf(self, u: float):
        return None

    def cdf(self, u: float) -> float:
        u = float(u)
        if not 0.0 <= u <= 1.0:
            raise DomainError(f"cdf argument must lie in [0, 1], got {u!r}")
        if u == 0.0:
            return 0.0
        if u == 1.0:
            return 1.0
        closed = self._closed_cdf(u)
        if closed is not None:
            return float(closed)
        return cdf_by_quadrature(self.pdf_pair, u, DEFAULT_CONFIG)

    def generating_joint(self) -> JointSpec:
        raise UnsupportedFamilyError(f"{self.name} is not built by conditioning on a sum")

    def params(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}  # type: ignore[arg-type]


@dataclass(frozen=True)
class Uniform(UnitFamily):
    name: ClassVar[str] = "uniform"

    def _logpdf_pair(self, u, w):
        return np.zeros_like(u)

    def _closed_cdf(self, u):
        return u

    def generating_joint(self):
        return JointSpec.independent(Exponential(1.0), Exponential(1.0))


@dataclass(frozen=True)
class Beta(UnitFamily):
    b1: float
    b2: float
    name: ClassVar[str] = "beta"
    n_params: ClassVar[int] = 2

    def __post_init__(self):
        object.__setattr__(self, "b1", _positive("b1", self.b1))
        object.__setattr__(self, "b2", _positive("b2", self.b2))

    def _logpdf_pair(self, u, w):
        lbeta = math.lgamma(self.b1) + math.lgamma(self.b2) - math.lgamma(self.b1 + self.b2)
        return _xlog(self.b1 - 1.0, u) + _xlog(self.b2 - 1.0, w) - lbeta

    def generating_joint(self):
        return JointSpec.independent(Gamma(1.0, self.b1), Gamma(1.0, self.b2))


@dataclass(frozen=True)
class Dist1(UnitFamily):
    """Two independent exponentials: ``delta e^{-delta u} / (1 - e^{-delta})``."""

    delta: float
    name: ClassVar[str] = "dist1"
    n_params: ClassVar[int] = 1

    def __post_init__(self):
        object.__setattr__(self, "delta", _real("delta", self.delta))

    def _logpdf_pair(self, u, w):
        d = self.delta
        if abs(d) < DELTA_THRESHOLD:
            return np.zeros_like(u)
        return -d * u - _log_poly_exp_integral([1.0], d)

    def _closed_cdf(self, u):
        d = self.delta
        if abs(d) < DELTA_THRESHOLD:
            return u
        return math.expm1(-d * u) / math.expm1(-d)

    def generating_joint(self):
        t1, t2 = _rates_for_difference(self.delta)
        return JointSpec.independent(Exponential(t1), Exponential(t2))


@dataclass(frozen=True)
class Dist2(UnitFamily):
    """FGM-coupled exponentials with common rate ``theta`` and dependence ``alpha``."""

    theta: float
    alpha: float
    name: ClassVar[str] = "dist2"
    n_params: ClassVar[int] = 2

    def __post_init__(self):
        object.__setattr__(self, "theta", _positive("theta", self.theta))
        a = _real("alpha", self.alpha)
        if not -1.0 <= a <= 1.0:
            raise ParameterError(f"alpha must lie in [-1, 1], got {a!r}")
        object.__setattr__(self, "alpha", a)

    def _denominator(self):
        t = self.theta
        e = math.exp(-t)
        return 1.0 + self.alpha * (1.0 + 4.0 * e - 4.0 / t + 4.0 * e / t)

    def _logpdf_pair(self, u, w):
        t = self.theta
        num = 1.0 + self.alpha * ((1.0 - 2.0 * np.exp(-t * u)) * (1.0 - 2.0 * np.exp(-t * w)))
        with np.errstate(divide="ignore"):
            return np.log(num) - math.log(self._denominator())

    def _closed_cdf(self, u):
        t, a = self.theta, self.alpha
        e = math.exp(-t)
        inner = u * (1.0 + 4.0 * e) + 2.0 * math.expm1(-t * u) / t - 2.0 * e * math.expm1(t * u) / t
        return (u + a * inner) / self._denominator()

    def generating_joint(self):
        return JointSpec.fgm(Exponential(self.theta), Exponential(self.theta), self.alpha)


@dataclass(frozen=True)
class Dist3(UnitFamily):
    """Two iid Lindley variables: ``(6/13)(2 - u)(1 + u)``."""

    name: ClassVar[str] = "dist3"

    def _logpdf_pair(self, u, w):
        # symmetric part grouped first so f(u) == f(1 - u) bitwise
        return (np.log1p(u) + np.log1p(w)) + math.log(6.0 / 13.0)

    def _closed_cdf(self, u):
        return 6.0 / 13.0 * (2.0 * u + u * u / 2.0 - u**3 / 3.0)

    def generating_joint(self):
        return JointSpec.independent(Lindley(1.0), Lindley(1.0))


@dataclass(frozen=True)
class Dist4(UnitFamily):
    """Independent Lindley variables with rate difference ``delta``.

    Density proportional to ``(1 + u)(2 - u) e^{-delta u}``.
    """

    delta: float
    name: ClassVar[str] = "dist4"
    n_params: ClassVar[int] = 1

    def __post_init__(self):
        object.__setattr__(self, "delta", _real("delta", self.delta))

    def _logpdf_pair(self, u, w):
        d = self.delta
        base = np.log1p(u) + np.log1p(w)
        if abs(d) < DELTA_THRESHOLD:
            return base + math.log(6.0 / 13.0)
        return base - d * u - _log_poly_exp_integral([2.0, 1.0, -1.0], d)

    def generating_joint(self):
        t1, t2 = _rates_for_difference(self.delta)
        return JointSpec.independent(Lindley(t1), Lindley(t2))


@dataclass(frozen=True)
class Dist5(UnitFamily):
    """Exponential and Lindley with a common rate: ``(2/3)(2 - u)``."""

    name: ClassVar[str] = "dist5"

    def _logpdf_pair(self, u, w):
        return math.log(2.0 / 3.0) + np.log1p(w)

    def _closed_cdf(self, u):
        return 2.0 / 3.0 * (2.0 * u - u * u / 2.0)

    def generating_joint(self):
        return JointSpec.independent(Exponential(1.0), Lindley(1.0))


@dataclass(frozen=True)
class Dist6(UnitFamily):
    """Exponential and Lindley with rate difference ``delta``.

    Density proportional to ``(2 - u) e^{-delta u}``.
    """

    delta: float
    name: ClassVar[str] = "dist6"
    n_params: ClassVar[int] = 1

    def __post_init__(self):
        object.__setattr__(self, "delta", _real("delta", self.delta))

    def _logpdf_pair(self, u, w):
        d = self.delta
        if abs(d) < DELTA_THRESHOLD:
            return math.log(2.0 / 3.0) + np.log1p(w)
        return np.log1p(w) - d * u - _log_poly_exp_integral([2.0, -1.0], d)

    def generating_joint(self):
        t1, t2 = _rates_for_difference(self.delta)
        return JointSpec.independent(Exponential(t1), Lindley(t2))


@dataclass(frozen=True)
class Dist7(UnitFamily):
    """Exponential (rate theta) and gamma (rate alpha, shape beta), ``delta = alpha - theta``.

    Density ``delta**beta e^{-delta (1-u)} (1-u)**(beta-1) / gamma(beta, delta)``,
    continued to ``delta <= 0`` through the normalizer
    ``int_0^1 s**(beta-1) e^{-delta s} ds``.
    """

    beta: float
    delta: float
    name: ClassVar[str] = "dist7"
    n_params: ClassVar[int] = 2

    def __post_init__(self):
        object.__setattr__(self, "beta", _positive("beta", self.beta))
        object.__setattr__(self, "delta", _real("delta", self.delta))

    def _logpdf_pair(self, u, w):
        b, d = self.beta, self.delta
        if abs(d) < DELTA_THRESHOLD:
            return math.log(b) + _xlog(b - 1.0, w)
        return _xlog(b - 1.0, w) - d * w - log_unit_gamma_integral(b, d)

    def generating_joint(self):
        theta = 1.0 + max(0.0, -self.delta)
        return JointSpec.independent(Exponential(theta), Gamma(theta + self.delta, self.beta))


@dataclass(frozen=True)
class LCG(UnitFamily):
    """Lindley conditioned on its convolution with a gamma variable.

    ``beta (1 + beta) / (2 + beta) (1 + u)(1 - u)**(beta - 1)``.
    """

    beta: float
    name: ClassVar[str] = "lcg"
    n_params: ClassVar[int] = 1

    def __post_init__(self):
        object.__setattr__(self, "beta", _positive("beta", self.beta))

    def _logpdf_pair(self, u, w):
        b = self.beta
        return math.log(b) + math.log1p(b) - math.log(2.0 + b) + np.log1p(u) + _xlog(b - 1.0, w)

    def _closed_cdf(self, u):
        b = self.beta
        w = 1.0 - u
        return -math.expm1(b * math.log(w) + math.log1p(u * b / (2.0 + b)))

    def sf(self, u):
        """Survival ``(1 - u)**beta (2 + beta + u beta) / (2 + beta)``, without cancellation."""
        arr = np.asarray(u, dtype=float)
        if np.any(~((arr >= 0) & (arr <= 1))):
            raise DomainError("sf argument must lie in [0, 1]")
        b = self.beta
        with np.errstate(divide="ignore"):
            out = np.exp(b * np.log1p(-arr) + np.log1p(arr * b / (2.0 + b)))
        return float(out) if np.ndim(u) == 0 else out

    def generating_joint(self):
        return JointSpec.independent(Lindley(1.0), Gamma(1.0, self.beta))


@dataclass(frozen=True)
class ToppLeone(UnitFamily):
    """Topp-Leone law, cdf ``(u (2 - u))**nu``."""

    nu: float
    name: ClassVar[str] = "toppleone"
    n_params: ClassVar[int] = 1

    def __post_init__(self):
        object.__setattr__(self, "nu", _positive("nu", self.nu))

    def _logpdf_pair(self, u, w):
        nu = self.nu
        return math.log(2.0 * nu) + np.log(w) + _xlog(nu - 1.0, u) + (nu - 1.0) * np.log1p(w)

    def _closed_cdf(self, u):
        return (u * (2.0 - u)) ** self.nu


FAMILIES: dict[str, type[UnitFamily]] = {
    cls.name: cls
    for cls in (Uniform, Beta, Dist1, Dist2, Dist3, Dist4, Dist5, Dist6, Dist7, LCG, ToppLeone)
}
FAMILIES["dist8"] = LCG
FAMILIES["topp-leone"] = ToppLeone


def make_family(name: str, **params) -> UnitFamily:
    """Look up a family by name (case-insensitive) and construct it."""
    key = name.strip().lower()
    if key not in FAMILIES:
        raise UnsupportedFamilyError(f"unknown family {name!r}; choose from {sorted(FAMILIES)}")
    cls = FAMILIES[key]
    try:
        return cls(**params)
    except TypeError as exc:
        expected = [f.name for f in fields(cls)]
        raise ParameterError(f"{key} takes parameters {expected}, got {sorted(params)}") from exc


def family_pdf(fam: UnitFamily, u):
    return fam.pdf(u)


def family_cdf(fam: UnitFamily, u: float) -> float:
    return fam.cdf(u)


def generating_joint(fam: UnitFamily) -> JointSpec:
    return fam.generating_joint()
