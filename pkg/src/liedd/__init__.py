"""Exact Lie bialgebra, Drinfel'd double and Poisson homogeneous space toolkit."""
from .algebra import (
    Bivector,
    JacobiError,
    LieAlgebra,
    StructureError,
    Tensor,
    Trivector,
    Vector,
    ad_invariant,
    bracket,
    jacobi_defect,
    wedge,
)
from .bialgebra import (
    Cocommutator,
    CoisotropyClass,
    YBClass,
    classify_yb,
    coboundary_delta,
    cocycle_defect,
    coisotropy_classify,
    grade_decompose,
    schouten,
    stachura_invariants,
)
from .contraction import DivergentLimit, auto_scale, contract_algebra, scaled_limit
from .double import DoubleSpec, MatchedPairError, assemble_double, canonical_casimir, canonical_r

__version__ = "0.1.0"

__all__ = [
    "Bivector", "Cocommutator", "CoisotropyClass", "DivergentLimit", "DoubleSpec", "JacobiError",
    "LieAlgebra", "MatchedPairError", "StructureError", "Tensor", "Trivector", "Vector", "YBClass",
    "ad_invariant", "assemble_double", "auto_scale", "bracket", "canonical_casimir", "canonical_r",
    "classify_yb", "coboundary_delta", "cocycle_defect", "coisotropy_classify", "contract_algebra",
    "grade_decompose", "jacobi_defect", "scaled_limit", "schouten", "stachura_invariants", "wedge",
]
