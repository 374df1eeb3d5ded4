"""Exact scalar and matrix arithmetic."""

from .bitmatrix import BitMatrix, bitmat_mul, bitmat_pow, bitmat_power_until_zero
from .fields import (
    GF2,
    QQ,
    Field,
    FieldMismatchError,
    PrimeField,
    PrimeFieldElement,
    RationalField,
    field_from_modulus,
    is_prime,
)
from .matrix import DimensionError, ExactMatrix, charpoly_exact, hessenberg, mat_mul
from .unipoly import (
    T,
    UniPoly,
    chebyshev_t,
    gcd,
    product,
    squarefree_decomposition,
    squarefree_part,
)

__all__ = [
    "BitMatrix", "bitmat_mul", "bitmat_pow", "bitmat_power_until_zero",
    "GF2", "QQ", "Field", "FieldMismatchError", "PrimeField", "PrimeFieldElement",
    "RationalField", "field_from_modulus", "is_prime",
    "DimensionError", "ExactMatrix", "charpoly_exact", "hessenberg", "mat_mul",
    "T", "UniPoly", "chebyshev_t", "gcd", "product", "squarefree_decomposition",
    "squarefree_part",
]
