"""Exact computations for isotopic pairs of matrices and the Lie hybrids they carry."""
from .errors import DimensionError, OpairError, PreconditionError, PropertyViolation
from .exact import Mat, Subspace, null_space, rref
from .isotopic import (
    Classification,
    MatrixPair,
    bracket_v1,
    bracket_v2,
    compute_annihilator,
    compute_normalizer,
    invariants_and_classify,
)
from .report import CheckReport

__all__ = [
    "CheckReport",
    "Classification",
    "DimensionError",
    "Mat",
    "MatrixPair",
    "OpairError",
    "PreconditionError",
    "PropertyViolation",
    "Subspace",
    "bracket_v1",
    "bracket_v2",
    "compute_annihilator",
    "compute_normalizer",
    "invariants_and_classify",
    "null_space",
    "rref",
]
