"""Continuous distributions on (0, 1) built as ``X | X + Y = 1``."""
from .engine import NumericUnitDistribution, build, fz_at_one, unit_cdf, unit_pdf
from .families import (
    FAMILIES,
    LCG,
    Beta,
    Dist1,
    Dist2,
    Dist3,
    Dist4,
    Dist5,
    Dist6,
    Dist7,
    ToppLeone,
    Uniform,
    UnitFamily,
    family_cdf,
    family_pdf,
    generating_joint,
    make_family,
)
from .joint import FGM, Independent, JointSpec, joint_pdf
from .positive import Exponential, Gamma, Lindley
from .quadrature import QuadratureConfig

__version__ = "0.1.0"
