"""Invariant 3-path spaces of finite digraphs.

Computes the dimension and an explicit basis of the space of invariant
3-paths in the path-chain complex of a digraph, with an exact
linear-algebra oracle for cross-checking.
"""

from .chains import (
    Chain,
    DigraphMorphism,
    allowed_paths,
    boundary,
    cluster_decompose,
    e_omega,
    induced_map,
    is_allowed,
    is_invariant,
    is_merging_map,
)
from .digraph import Digraph, VertexSubset, from_edges
from .fields import GF, QQ, PrimeField, RationalField, parse_field
from .generators import RandomSpec, merging_quotient, random_digraph, tau, trapezohedron
from .omega3 import Omega3Basis, analyze_pair, omega3_basis, omega3_dim, pair_dimension

__version__ = "0.1.0"

__all__ = [
    "Chain",
    "Digraph",
    "DigraphMorphism",
    "GF",
    "QQ",
    "Omega3Basis",
    "PrimeField",
    "RandomSpec",
    "RationalField",
    "VertexSubset",
    "allowed_paths",
    "analyze_pair",
    "boundary",
    "cluster_decompose",
    "e_omega",
    "from_edges",
    "induced_map",
    "is_allowed",
    "is_invariant",
    "is_merging_map",
    "merging_quotient",
    "omega3_basis",
    "omega3_dim",
    "pair_dimension",
    "parse_field",
    "random_digraph",
    "tau",
    "trapezohedron",
]
