"""Exact computation of Kazhdan-Lusztig cells, asymptotic multiplication
tables and based convolution algebras for low-rank extended affine Weyl
groups."""

__version__ = "0.1.0"

from .laurent import LaurentPoly
from .weyl import Ball, RootDatum, WeylElement, build_root_datum, datum_from_key

__all__ = [
    "LaurentPoly",
    "Ball",
    "RootDatum",
    "WeylElement",
    "build_root_datum",
    "datum_from_key",
]
