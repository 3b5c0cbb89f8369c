"""Exact coefficients, log-concavity exceptions and degree thresholds for
exponential and geometric generating functions of divisor-power weights."""

from logconcavity.arith import FamilyKind, FamilySpec, alpha, check_condition, divisors, g_value, mobius
from logconcavity.series import (
    CoefficientTable,
    SeriesKind,
    exp_series,
    geo_series,
    p_table,
    product_series,
    q_table,
)
from logconcavity.logconcave import DeltaRecord, ExceptionSet, LandscapeGrid, delta_at, exceptions, landscape, render_grid

__version__ = "0.1.0"

__all__ = [
    "CoefficientTable",
    "DeltaRecord",
    "ExceptionSet",
    "FamilyKind",
    "FamilySpec",
    "LandscapeGrid",
    "SeriesKind",
    "alpha",
    "check_condition",
    "delta_at",
    "divisors",
    "exceptions",
    "exp_series",
    "g_value",
    "geo_series",
    "landscape",
    "mobius",
    "p_table",
    "product_series",
    "q_table",
    "render_grid",
]
