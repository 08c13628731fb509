"""Exact computations with generalized Witt algebras in positive characteristic."""

from .scalars import (
    PrimeField, ExtField, RatFuncField, TestRing, WittKernelPoint,
    parse_ring_spec, dp_power_coefficient, lucas_binomial,
)
from .linalg import Matrix, Echelon
from .dpalg import DPAlgebra, DPElement, gamma, gamma_by_expansion, truncated_poly_iso, pia_make
from .liecore import (
    Derivation, LieData, bracket, witt_algebra, witt_operator_algebra,
    derivation_algebra, p_power, is_special_derivation, is_simple,
    enveloping_closure_dim, center,
)
from .autos import (
    AlgebraMorphism, TriangularDecomposition, artin_hasse_auto, g_minus_point,
    g_zero_point, compose, invert, identity, morphism_from_generator_images,
    random_derivation_automorphism, random_g_plus, is_derivation_automorphism,
    is_dp_automorphism, pushforward, triangulate, is_unipotent,
)
from .wittree import (
    WittReeCandidate, witt_candidate, verify_witt_ree, orthonormal_system,
    ree_form, multiplicative_form, eigen_decompose, recognize_w1n, trivialize_insep,
)
from . import errors

__all__ = [
    "PrimeField",
    "ExtField",
    "RatFuncField",
    "TestRing",
    "WittKernelPoint",
    "parse_ring_spec",
    "dp_power_coefficient",
    "lucas_binomial",
    "Matrix",
    "Echelon",
    "DPAlgebra",
    "DPElement",
    "gamma",
    "gamma_by_expansion",
    "truncated_poly_iso",
    "pia_make",
    "Derivation",
    "LieData",
    "bracket",
    "witt_algebra",
    "witt_operator_algebra",
    "derivation_algebra",
    "p_power",
    "is_special_derivation",
    "is_simple",
    "enveloping_closure_dim",
    "center",
    "AlgebraMorphism",
    "TriangularDecomposition",
    "artin_hasse_auto",
    "g_minus_point",
    "g_zero_point",
    "compose",
    "invert",
    "identity",
    "morphism_from_generator_images",
    "random_derivation_automorphism",
    "random_g_plus",
    "is_derivation_automorphism",
    "is_dp_automorphism",
    "pushforward",
    "triangulate",
    "is_unipotent",
    "WittReeCandidate",
    "witt_candidate",
    "verify_witt_ree",
    "orthonormal_system",
    "ree_form",
    "multiplicative_form",
    "eigen_decompose",
    "recognize_w1n",
    "trivialize_insep",
    "errors",
]

__version__ = "0.1.0"
