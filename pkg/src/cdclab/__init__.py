"""Exact-arithmetic workbench for constant dimension (subspace) codes."""

from .gf import GF, ExtensionField, FieldElement, fe_add, fe_inv, fe_mul, fe_neg, field_make
from .matrix import Matrix, hstack, identity, matrix_from_rows, rank, rref, vstack
from .qfunc import (
    anticode_bound,
    count_intersecting,
    gauss_binomial,
    lifted_mrd_size,
    mrd_matrix_bound,
    sandwich_check,
    spread_lower,
)
from .rankmetric import RankCode, gabidulin, rank_distance, verify_mrd
from .subspace import (
    BudgetError,
    Code,
    Subspace,
    embed,
    enumerate_subspaces,
    hamming_distance,
    intersection_dim,
    join,
    pivot_vector,
    subspace_distance,
    subspace_from_matrix,
    verify_min_distance,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
