"""regulus: exact graded commutative algebra and the asymptotics of ideal powers."""

__version__ = "0.1.0"

from .field import PrimeField, RationalField, QQ, FieldError, DEFAULT_PRIME
from .ring import (Ring, make_ring, Polynomial, RingError, INHOMOGENEOUS,
                   parse_polynomial, format_polynomial, poly_arithmetic)
from .groebner import (FreeModule, Vec, GroebnerBasis, groebner_basis,
                       normal_form, syzygies, kernel_of_map, eliminate_ideal,
                       SyzygyContext, verify_groebner)

__all__ = [
    "PrimeField", "RationalField", "QQ", "FieldError", "DEFAULT_PRIME",
    "Ring", "make_ring", "Polynomial", "RingError", "INHOMOGENEOUS",
    "parse_polynomial", "format_polynomial", "poly_arithmetic",
    "FreeModule", "Vec", "GroebnerBasis", "groebner_basis", "normal_form",
    "syzygies", "kernel_of_map", "eliminate_ideal", "SyzygyContext",
    "verify_groebner",
    "__version__",
]
