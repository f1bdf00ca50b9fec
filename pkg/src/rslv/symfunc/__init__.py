"""Exact polynomial, rational-function and series arithmetic with symmetric functions."""
from .poly import REGISTRY, MultiPolynomial, VariableRegistry
from .ratfunc import ONE, ZERO, RationalFunction, as_rf, rf_prod, rf_sum, symbols, var
from .series import FormalSeries, geometric_product, series_from_rational
from .symmetric import (
    Partition,
    complete_homogeneous,
    determinant,
    elementary_symmetric,
    elementary_values,
    is_dominant,
    lagrange_reconstruct,
    partitions,
    schur,
    schur_jacobi_trudi,
)

__all__ = [
    "REGISTRY",
    "MultiPolynomial",
    "VariableRegistry",
    "ONE",
    "ZERO",
    "RationalFunction",
    "as_rf",
    "rf_prod",
    "rf_sum",
    "symbols",
    "var",
    "FormalSeries",
    "geometric_product",
    "series_from_rational",
    "Partition",
    "complete_homogeneous",
    "determinant",
    "elementary_symmetric",
    "elementary_values",
    "is_dominant",
    "lagrange_reconstruct",
    "partitions",
    "schur",
    "schur_jacobi_trudi",
]
