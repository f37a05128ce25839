"""Exact computational realizations of orientifold KLR algebras, affine
Hecke algebras of type C, trigonometric R/K-matrices, and the bimodules
connecting them."""

__version__ = "0.1.0"

from .exact import BaseField, PolyRing, MRat, TruncSeries
from .weylb import SignedPerm

__all__ = ["BaseField", "PolyRing", "MRat", "TruncSeries", "SignedPerm"]
