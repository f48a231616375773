"""Exact-arithmetic cohomology engine for finite-dimensional left Leibniz algebras.

Subpackages:
  fields    exact scalars over Q and F_p
  linalg    sparse elimination, subspaces, induced maps
  algebra   structure-constant algebras, validation, catalog
  bimodule  left modules and bimodules, constructions, invariants
  cochain   complexes, differentials, cohomology tables, long exact sequences
  spectral  filtered complexes and page tables
  cli       command-line front end
  reproduce named golden reproduction cases
"""

from .algebra import AlgebraMorphism, LeibnizAlgebra, catalog, hemi_semidirect
from .bimodule import (
    Bimodule,
    LeftModule,
    adjoint_bimodule,
    adjoint_left,
    antisymmetrize,
    dual_module,
    symmetrize,
    trivial_bimodule,
    trivial_module,
    weight_module,
)
from .cochain import CochainComplex, CohomologyTable, cohomology
from .fields import PrimeField, QQ, Rationals, parse_field
from .linalg import (
    SparseMatrix,
    Subspace,
    QuotientSpace,
    dense_rank,
    image_basis,
    induced_map,
    kernel_basis,
    preimage,
    rank,
)
from .spectral import FilteredComplex, PageTable, pages

__all__ = [
    "AlgebraMorphism",
    "LeibnizAlgebra",
    "catalog",
    "hemi_semidirect",
    "Bimodule",
    "LeftModule",
    "adjoint_bimodule",
    "adjoint_left",
    "antisymmetrize",
    "dual_module",
    "symmetrize",
    "trivial_bimodule",
    "trivial_module",
    "weight_module",
    "CochainComplex",
    "CohomologyTable",
    "cohomology",
    "PrimeField",
    "QQ",
    "Rationals",
    "parse_field",
    "SparseMatrix",
    "Subspace",
    "QuotientSpace",
    "dense_rank",
    "image_basis",
    "induced_map",
    "kernel_basis",
    "preimage",
    "rank",
    "FilteredComplex",
    "PageTable",
    "pages",
]

__version__ = "0.1.0"
