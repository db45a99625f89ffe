"""Explicit Frobenius splittings of SL_n over F_p, checked with exact arithmetic."""
from .ffield import Fp, Prime
from .frobenius import (
    NotASplitting,
    SplittingElement,
    compose_stable,
    derive_along_subdivisor,
    frob5_derive,
    proposition_stable,
    stable_from_section,
    tau_for_fiber,
    verify_compatible,
    verify_splitting,
    verify_wellposed,
)
from .groebner import BudgetExceeded, Ideal, colon, krull_dimension, radical_member
from .poly import MonomialOrder, Poly, PolyRing
from .slgroup import MatrixPoint, SlnRing, companion_point, corner_minor, fundamental_character
from .steinberg import fiber_dimension, fiber_ideal, reducedness_sample, unipotent_fiber_coordinates

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded", "Fp", "Ideal", "MatrixPoint", "MonomialOrder", "NotASplitting", "Poly",
    "PolyRing", "Prime", "SlnRing", "SplittingElement", "colon", "companion_point",
    "compose_stable", "corner_minor", "derive_along_subdivisor", "fiber_dimension", "fiber_ideal",
    "frob5_derive", "fundamental_character", "krull_dimension", "proposition_stable",
    "radical_member", "reducedness_sample", "stable_from_section", "tau_for_fiber",
    "unipotent_fiber_coordinates", "verify_compatible", "verify_splitting", "verify_wellposed",
]
