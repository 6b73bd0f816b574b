"""Exact one-dimensional sums, finitized characters and Yang-Baxter checks
for fused RSOS lattice models."""

from .model import ModelSpec, band_structure, central_charge, conformal_weight, sector_map
from .qseries import QSeries, inv_euler_product, qfactorial, qmultinomial, qtrinomial_T

__all__ = [
    "ModelSpec",
    "QSeries",
    "band_structure",
    "central_charge",
    "conformal_weight",
    "sector_map",
    "qfactorial",
    "qmultinomial",
    "qtrinomial_T",
    "inv_euler_product",
]

__version__ = "0.1.0"
