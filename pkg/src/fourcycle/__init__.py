"""Quasi-cyclic LDPC pairs for CSS quantum codes: construction, exact checks, decoding."""

__version__ = "0.1.0"

from .construct import CssCandidate, apply_masks, approx_rate, build, rate_menu, theorem2_build
from .gf2 import SparseBinaryMatrix, expand, gf2_product_is_zero, gf2_rank, quantum_rate, tanner_girth
from .model import INF, ModelMatrix, Tire, check_girth6, check_twisted, four_cycle_pair
from .perfume import Perfume, enumerate_fulfillments, find_perfume, is_perfume, make_perfume, tight_bound_perfume

__all__ = [
    "INF",
    "CssCandidate",
    "ModelMatrix",
    "Perfume",
    "SparseBinaryMatrix",
    "Tire",
    "apply_masks",
    "approx_rate",
    "build",
    "check_girth6",
    "check_twisted",
    "enumerate_fulfillments",
    "expand",
    "find_perfume",
    "four_cycle_pair",
    "gf2_product_is_zero",
    "gf2_rank",
    "is_perfume",
    "make_perfume",
    "quantum_rate",
    "rate_menu",
    "tanner_girth",
    "theorem2_build",
    "tight_bound_perfume",
]
