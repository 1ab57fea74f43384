"""Ricci solitons on three-dimensional Lorentzian Lie groups and Walker manifolds."""

from .exactfield import ONE, SQRT2, ZERO, QuadScalar, as_quad, parse_quad
from .liemodel import FAMILIES, LieAlgebra3, Metric3, family
from .curvature import curvature_tensor, einstein_check
from .segre import SegreType, classify
from .soliton import solve

__version__ = "0.1.0"

__all__ = [
    "ONE", "SQRT2", "ZERO", "QuadScalar", "as_quad", "parse_quad",
    "FAMILIES", "LieAlgebra3", "Metric3", "family",
    "curvature_tensor", "einstein_check", "SegreType", "classify", "solve",
]
