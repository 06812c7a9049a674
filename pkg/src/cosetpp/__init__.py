"""Permutation polynomials of GF(q^2) acting as monomials on cosets of a
subgroup of the (q+1)-st roots of unity: construction, classification of
sparse families, counting, and brute-force verification."""

from .fieldcore import (
    ZERO,
    CosetSystem,
    FieldCtx,
    build_field,
    coset_index,
    coset_system,
    frobenius,
    mu_subgroup,
)
from .polyring import Poly

__all__ = [
    "ZERO",
    "CosetSystem",
    "FieldCtx",
    "Poly",
    "build_field",
    "coset_index",
    "coset_system",
    "frobenius",
    "mu_subgroup",
]

__version__ = "0.1.0"
