"""Shear construction of planar harmonic maps and their coefficient bounds."""

__version__ = "0.1.0"

from .mappings import (
    DerivativeZero,
    GridSample,
    HarmonicMapSpec,
    MobiusDilatation,
    ParamOutOfRange,
    catalog,
    dilatation_value,
    equivalent_a_of_c,
    eval_map,
)
from .series import (
    ConstantTermZero,
    TruncatedSeries,
    binomial_expand,
    differentiate,
    integrate,
    mobius_series,
    reciprocal,
)
from .shear import ShearProblem, ShearResult, convex_direction_heuristic, reconstruct_residual, shear
from .verify import BoundReport, check_bounds, injectivity_sample, jacobian_scan, sharpness_gap

__all__ = [
    "BoundReport", "ConstantTermZero", "DerivativeZero", "GridSample", "HarmonicMapSpec",
    "MobiusDilatation", "ParamOutOfRange", "ShearProblem", "ShearResult", "TruncatedSeries",
    "binomial_expand", "catalog", "check_bounds", "convex_direction_heuristic", "differentiate",
    "dilatation_value", "equivalent_a_of_c", "eval_map", "injectivity_sample", "integrate",
    "jacobian_scan", "mobius_series", "reciprocal", "reconstruct_residual", "shear", "sharpness_gap",
]
