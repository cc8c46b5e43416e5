"""Numeric construction of ``U = X | X + Y = 1`` from any :class:`JointSpec`.

The density of ``U`` is the joint density along the segment ``x + y = 1``
divided by the convolution density ``f_Z(1) = int_0^1 f(v, 1 - v) dv``.
This is the reference against which every closed-form family is checked.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .joint import JointSpec, joint_log_pdf
from .quadrature import DEFAULT_CONFIG, QuadratureConfig, cdf_by_quadrature, integrate_unit


def _segment_density(joint: JointSpec, v: np.ndarray, w: np.ndarray) -> np.ndarray:
    return np.exp(joint_log_pdf(joint, v, w))


def fz_at_one(joint: JointSpec, quad: QuadratureConfig = DEFAULT_CONFIG) -> float:
    """Density of ``Z = X + Y`` at 1, by tanh-sinh quadrature.

    Raises
    ------
    QuadratureError
        If the configured tolerance is not met (carries the achieved estimate).
    """
    value, _ = integrate_unit(lambda v, w: _segment_density(joint, v, w), quad)
    return value


@dataclass(frozen=True)
class NumericUnitDistribution:
    """Engine-built density on (0, 1) with a cached normalizer.

    Build with :meth:`from_joint`; evaluating the density never re-integrates.
    """

    joint: JointSpec
    normalizer: float
    quad: QuadratureConfig = DEFAULT_CONFIG

    @classmethod
    def from_joint(cls, joint: JointSpec, quad: QuadratureConfig = DEFAULT_CONFIG) -> "NumericUnitDistribution":
        return cls(joint, fz_at_one(joint, quad), quad)

    def swapped(self) -> "NumericUnitDistribution":
        """Distribution of ``Y | X + Y = 1``, i.e. of ``1 - U``."""
        return NumericUnitDistribution(self.joint.swapped(), self.normalizer, self.quad)

    def _pdf_pair(self, v, w):
        return _segment_density(self.joint, v, w) / self.normalizer

    def pdf(self, u):
        arr = np.asarray(u, dtype=float)
        if np.any(~(arr >= 0)) or np.any(arr > 1):
            raise DomainError("unit density argument must lie in [0, 1]")
        out = self._pdf_pair(arr, 1.0 - arr)
        return float(out) if np.ndim(u) == 0 else out

    def cdf(self, u: float) -> float:
        u = float(u)
        if not 0.0 <= u <= 1.0:
            raise DomainError(f"cdf argument must lie in [0, 1], got {u!r}")
        if u == 1.0:
            # integrate rather than return 1 so normalization errors stay visible
            value, _ = integrate_unit(self._pdf_pair, self.quad)
            return value
        return cdf_by_quadrature(self._pdf_pair, u, self.quad)


def unit_pdf(dist: NumericUnitDistribution, u):
    """``f(u, 1 - u) / f_Z(1)``; at ``u`` in {0, 1} the one-sided limit."""
    return dist.pdf(u)


def unit_cdf(dist: NumericUnitDistribution, u: float) -> float:
    """``P(U <= u)`` by quadrature of the engine density."""
    return dist.cdf(u)


def build(joint: JointSpec, quad: QuadratureConfig = DEFAULT_CONFIG) -> NumericUnitDistribution:
    return NumericUnitDistribution.from_joint(joint, quad)


__all__ = ["NumericUnitDistribution", "build", "fz_at_one", "unit_cdf", "unit_pdf"]
