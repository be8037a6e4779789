"""Pauli (Hilbert-Schmidt) basis representation of small qubit operators."""
from src.aklt_trees.pauli.operators import (
    PAULI,
    BlochVector,
    HSOperator,
    PauliWord,
    ProductBoundary,
    boundary_expand,
    boundary_operator,
    is_psd,
    site_matrix,
    to_dense,
    traceless_norm,
)

__all__ = [
    "PAULI",
    "BlochVector",
    "HSOperator",
    "PauliWord",
    "ProductBoundary",
    "boundary_expand",
    "boundary_operator",
    "is_psd",
    "site_matrix",
    "to_dense",
    "traceless_norm",
]
