"""Exact computations with the C_n recurrence over Z/2, the operator U on
Z/2[r], its kernel K, and the Hecke operators T_p acting on K."""

from .gf2poly import BitPoly, NEG_INF
from .qseries import QSeries

__version__ = "0.1.0"

__all__ = ["BitPoly", "NEG_INF", "QSeries", "__version__"]
