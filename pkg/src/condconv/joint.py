"""Bivariate densities on the positive quadrant.

Two marginals are combined either as an independent product or through the
Farlie-Gumbel-Morgenstern copula,

    f(x, y) = f_X(x) f_Y(y) [1 + alpha (2 F_X(x) - 1)(2 F_Y(y) - 1)].
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Union

import numpy as np

from . import positive
from .errors import ParameterError
from .positive import PositiveDistSpec


@dataclass(frozen=True)
class Independent:
    pass


@dataclass(frozen=True)
class FGM:
    alpha: float

    def __post_init__(self):
        a = float(self.alpha)
        if not (math.isfinite(a) and -1.0 <= a <= 1.0):
            raise ParameterError(f"FGM alpha must lie in [-1, 1], got {self.alpha!r}")
        object.__setattr__(self, "alpha", a)


Dependence = Union[Independent, FGM]


@dataclass(frozen=True)
class JointSpec:
    marg_x: PositiveDistSpec
    marg_y: PositiveDistSpec
    dependence: Dependence = field(default_factory=Independent)

    @classmethod
    def independent(cls, marg_x, marg_y) -> "JointSpec":
        return cls(marg_x, marg_y, Independent())

    @classmethod
    def fgm(cls, marg_x, marg_y, alpha: float) -> "JointSpec":
        return cls(marg_x, marg_y, FGM(alpha))

    def swapped(self) -> "JointSpec":
        """The joint of ``(Y, X)``; conditioning it on the sum gives ``1 - U``."""
        return JointSpec(self.marg_y, self.marg_x, self.dependence)


def joint_log_pdf(joint: JointSpec, x, y):
    """Log joint density; see :func:`joint_pdf`."""
    out = positive.log_pdf(joint.marg_x, x) + np.asarray(positive.log_pdf(joint.marg_y, y))
    dep = joint.dependence
    if isinstance(dep, FGM) and dep.alpha != 0.0:
        # each cdf is computed once per coordinate
        gx = 2.0 * np.asarray(positive.cdf(joint.marg_x, x)) - 1.0
        gy = 2.0 * np.asarray(positive.cdf(joint.marg_y, y)) - 1.0
        bracket = 1.0 + dep.alpha * gx * gy
        with np.errstate(divide="ignore"):
            out = out + np.log(np.maximum(bracket, 0.0))
    if np.ndim(out) == 0:
        return float(out)
    return out


def joint_pdf(joint: JointSpec, x, y):
    """Joint density at ``(x, y)`` with ``x, y >= 0``; vectorized."""
    out = np.exp(joint_log_pdf(joint, x, y))
    return float(out) if np.ndim(out) == 0 else out
