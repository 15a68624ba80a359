"""Graded commutative algebra over GF(p): Groebner bases, minimal resolutions,
regularity, Tor, products of linear ideals and I-approximations."""

from __future__ import annotations

from .approx import ApproximationWitness, GeneralizedApproxSystem, SandwichData, verify_witness, witness_from_sandwich
from .dsl import parse_script
from .groebner import Submodule, buchberger, ideal, ideal_colon, ideal_intersect, intersect
from .linprod import LinearIdealFamily, primary_decomposition_linprod, product_ideal, proof_trace
from .modules import ModuleMap, PresentedModule, tensor
from .poly import GradedFreeModule, GradedPolynomial, PolyRing, make_ring
from .resolution import betti_table, free_resolution, hilbert_series, krull_dim, regularity, resolution_over_hypersurface
from .tor import check_chardin, creg, is_tor_linear, tor_module

__version__ = "0.1.0"

__all__ = [
    "ApproximationWitness",
    "GeneralizedApproxSystem",
    "GradedFreeModule",
    "GradedPolynomial",
    "LinearIdealFamily",
    "ModuleMap",
    "PolyRing",
    "PresentedModule",
    "SandwichData",
    "Submodule",
    "betti_table",
    "buchberger",
    "check_chardin",
    "creg",
    "free_resolution",
    "hilbert_series",
    "ideal",
    "ideal_colon",
    "ideal_intersect",
    "intersect",
    "is_tor_linear",
    "krull_dim",
    "make_ring",
    "parse_script",
    "primary_decomposition_linprod",
    "product_ideal",
    "proof_trace",
    "regularity",
    "resolution_over_hypersurface",
    "tensor",
    "tor_module",
    "verify_witness",
    "witness_from_sandwich",
]
