"""Rigorous computations for the monic integer transfinite diameter t_M(I)."""

from .enclosure import RealEnclosure, Undecided
from .poly import IntPolynomial, poly
from .realanalysis import RatInterval, WeightedProduct

__all__ = ["IntPolynomial", "RatInterval", "RealEnclosure", "Undecided", "WeightedProduct", "poly"]
__version__ = "0.1.0"
