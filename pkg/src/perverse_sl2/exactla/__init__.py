"""Exact arithmetic in GF(p^n) and dense linear algebra over it."""
from .field import GF, FieldElement, FieldError, field_arith, field_of_order, is_irreducible, is_prime, make_field
from .linalg import (
    RREF,
    ShapeError,
    coordinates,
    echelon_basis,
    inverse,
    is_invertible,
    kernel_basis,
    kron,
    rank,
    rowspace_intersect,
    rowspace_sum,
    rref,
    solve,
)
from .serialize import dump_matrix, load_matrix

__all__ = [
    "GF", "FieldElement", "FieldError", "field_arith", "field_of_order", "is_irreducible",
    "is_prime", "make_field", "RREF", "ShapeError", "coordinates", "echelon_basis", "inverse",
    "is_invertible", "kernel_basis", "kron", "rank", "rowspace_intersect", "rowspace_sum",
    "rref", "solve", "dump_matrix", "load_matrix",
]
