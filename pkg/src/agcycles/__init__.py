"""Exact computations in the tautological ring of A_g and Ekedahl-Oort strata."""
from .ppoly import P, PFrac, PPoly
from .tautring import RingMode, TautClass

__version__ = "0.1.0"

__all__ = ["P", "PFrac", "PPoly", "RingMode", "TautClass", "__version__"]
