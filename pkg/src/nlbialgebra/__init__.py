"""Exact arithmetic for Lie bialgebras, Nijenhuis operators and r-matrices."""

__version__ = "0.1.0"

from .errors import (
    ConcomitantNonzero,
    DegenerateR,
    DimensionMismatch,
    IdentityViolation,
    JacobiFailure,
    ParseError,
    SchemaError,
    SkewSymmetryBroken,
    UncertifiedBracket,
    UnknownName,
)
from .exact import Multivector, Operator, rational, solve_linear
from .lie import Cochain, LieAlgebra, StructureTensor, ce_coboundary, dualize, transpose
from .nijenhuis import classify_operator, deformed_bracket, iterated_bracket, torsion
from .bialgebra import Classification, build_hierarchy, classify, deform_delta_tn, is_lie_bialgebra
from .yang_baxter import RMatrix, coboundary_cobracket, compose_nr, n_from_pair, r_bracket
from .poisson import euler_top_field, hamiltonian_field, kks, solve_hamiltonian
from . import catalog

__all__ = [
    "Classification", "Cochain", "ConcomitantNonzero", "DegenerateR", "DimensionMismatch",
    "IdentityViolation", "JacobiFailure", "LieAlgebra", "Multivector", "Operator", "ParseError",
    "RMatrix", "SchemaError", "SkewSymmetryBroken", "StructureTensor", "UncertifiedBracket",
    "UnknownName", "build_hierarchy", "catalog", "ce_coboundary", "classify_operator", "classify",
    "coboundary_cobracket", "compose_nr", "deform_delta_tn", "deformed_bracket", "dualize",
    "euler_top_field", "hamiltonian_field", "is_lie_bialgebra", "iterated_bracket", "kks",
    "n_from_pair", "r_bracket", "rational", "solve_hamiltonian", "solve_linear", "torsion",
    "transpose",
]
