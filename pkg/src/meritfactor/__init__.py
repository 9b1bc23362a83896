"""Merit factor of binary sequence families and their asymptotic limits."""

__version__ = "0.1.0"

from .seq_core import (
    autocorrelation,
    format_sequence,
    merit_factor,
    merit_factor_fast,
    merit_factor_integral,
    negaperiodic,
    parse_sequence,
    periodic_construction,
    rotate_truncate,
)
from .families import FamilySpec, galois_seq, gmw_seq, jacobi_seq, legendre_seq, sidelnikov_seq
from .asymptotics import g, h, maximize_g, maximize_h, named_constants

__all__ = [
    "__version__",
    "autocorrelation",
    "format_sequence",
    "merit_factor",
    "merit_factor_fast",
    "merit_factor_integral",
    "negaperiodic",
    "parse_sequence",
    "periodic_construction",
    "rotate_truncate",
    "FamilySpec",
    "galois_seq",
    "gmw_seq",
    "jacobi_seq",
    "legendre_seq",
    "sidelnikov_seq",
    "g",
    "h",
    "maximize_g",
    "maximize_h",
    "named_constants",
]
