"""Exact computational homological algebra over the rationals.

Bar and cobar constructions, contractions and homological perturbation,
explicit contracting homotopies, universal enveloping A-infinity algebras
with PBW verification, and Gauss-Manin twisting cochains — every identity
checked exactly over Q at a configurable weight truncation.
"""

from .signs import koszul_sign
from .spaces import (
    Element,
    GradedSpace,
    LinearOperator,
    SingularPieceError,
    compose,
    graded_commutator,
    identity_operator,
    operator_inverse,
)
from .free_objects import (
    FreeCommutative,
    LInfStructure,
    TensorSquare,
    bialgebra_compat_residual,
    ce_codifferential,
    primitives,
)

__all__ = [
    "Element",
    "FreeCommutative",
    "GradedSpace",
    "LInfStructure",
    "LinearOperator",
    "SingularPieceError",
    "TensorSquare",
    "bialgebra_compat_residual",
    "ce_codifferential",
    "compose",
    "graded_commutator",
    "identity_operator",
    "koszul_sign",
    "operator_inverse",
    "primitives",
]
