"""Gamma-function family: log-gamma and the incomplete gamma functions.

The regularized incomplete gamma functions use the usual split: power
series below ``x = a + 1`` and a modified-Lentz continued fraction above.
"""
from __future__ import annotations

import math
import sys

from .errors import DomainError, ParameterError

_EPS = 1e-16
_TINY = sys.float_info.min / sys.float_info.epsilon
_MAX_ITER = 100_000


def log_gamma(x: float) -> float:
    """Natural log of the gamma function for ``x > 0``."""
    if not x > 0 or not math.isfinite(x):
        raise ParameterError(f"log_gamma requires a finite positive argument, got {x!r}")
    return math.lgamma(x)


def _prefactor(a: float, x: float) -> float:
    # x^a e^-x / Gamma(a), in log space to survive large a
    return math.exp(a * math.log(x) - x - math.lgamma(a))


def _series(a: float, x: float) -> float:
    ap = a
    term = 1.0 / a
    total = term
    for _ in range(_MAX_ITER):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            return total * _prefactor(a, x)
    raise ArithmeticError(f"incomplete gamma series did not converge (a={a}, x={x})")


def _continued_fraction(a: float, x: float) -> float:
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_ITER):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        step = d * c
        h *= step
        if abs(step - 1.0) < _EPS:
            return _prefactor(a, x) * h
    raise ArithmeticError(f"incomplete gamma continued fraction did not converge (a={a}, x={x})")


def _check(a: float, x: float) -> None:
    if not (a > 0 and math.isfinite(a)):
        raise ParameterError(f"shape must be finite and positive, got {a!r}")
    if math.isnan(x) or x < 0:
        raise DomainError(f"incomplete gamma argument must be >= 0, got {x!r}")


def gammainc_lower(a: float, x: float) -> float:
    """Regularized lower incomplete gamma ``P(a, x)``."""
    _check(a, x)
    if x == 0:
        return 0.0
    if math.isinf(x):
        return 1.0
    if x < a + 1.0:
        return min(_series(a, x), 1.0)
    return max(1.0 - _continued_fraction(a, x), 0.0)


def gammainc_upper(a: float, x: float) -> float:
    """Regularized upper incomplete gamma ``Q(a, x) = 1 - P(a, x)``."""
    _check(a, x)
    if x == 0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < a + 1.0:
        return max(1.0 - _series(a, x), 0.0)
    return min(_continued_fraction(a, x), 1.0)


def _unregularize(p: float, a: float) -> float:
    return 0.0 if p == 0.0 else math.exp(math.log(p) + math.lgamma(a))


def lower_gamma(a: float, x: float) -> float:
    """Unregularized lower incomplete gamma ``gamma(a, x) = int_0^x t^(a-1) e^-t dt``."""
    return _unregularize(gammainc_lower(a, x), a)


def upper_gamma(a: float, x: float) -> float:
    """Unregularized upper incomplete gamma ``Gamma(a, x) = int_x^inf t^(a-1) e^-t dt``."""
    return _unregularize(gammainc_upper(a, x), a)


def log_unit_gamma_integral(shape: float, delta: float) -> float:
    """Log of ``int_0^1 s^(shape-1) exp(-delta*s) ds`` for any real ``delta``.

    For ``delta > 1`` this is ``log(gamma(shape, delta)) - shape*log(delta)``.
    Otherwise (including every negative ``delta``, where the incomplete gamma
    would need a negative argument) the term-wise integrated exponential
    series ``sum_k (-delta)^k / (k! (shape + k))`` is summed directly.
    """
    if not (shape > 0 and math.isfinite(shape)):
        raise ParameterError(f"shape must be finite and positive, got {shape!r}")
    if not math.isfinite(delta):
        raise ParameterError(f"delta must be finite, got {delta!r}")
    if delta > 1.0:
        p = gammainc_lower(shape, delta)
        return math.log(p) + math.lgamma(shape) - shape * math.log(delta)
    if delta < -1.0:
        return _log_positive_series(shape, -delta)
    total = 0.0
    term = 1.0
    for k in range(_MAX_ITER):
        contrib = term / (shape + k)
        total += contrib
        if k > 0 and abs(contrib) < _EPS * abs(total):
            return math.log(total)
        term *= -delta / (k + 1)
    raise ArithmeticError("unit gamma series did not converge")


def _log_positive_series(shape: float, m: float) -> float:
    # log sum_k m^k / (k! (shape + k)), all terms positive; scaled by e^{-m}
    # so partial sums stay O(1) even for large m
    log_term = -m  # log(e^-m m^0 / 0!)
    total = 0.0
    k = 0
    peaked = False
    while k < _MAX_ITER:
        contrib = math.exp(log_term) / (shape + k)
        total += contrib
        if k >= m:
            peaked = True
        if peaked and contrib < _EPS * total:
            return m + math.log(total)
        k += 1
        log_term += math.log(m) - math.log(k)
    raise ArithmeticError("unit gamma series did not converge")
