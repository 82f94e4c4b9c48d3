"""Geometrically local codes from subdivided balanced-product square complexes.

The package builds balanced products and left-right Cayley complexes,
subdivides them into parity codes on the refined grid, embeds the result in
the integer lattice, and verifies every claimed property with exact,
exhaustive oracles at desk scale: dimension, distance, energy barrier,
soundness, small-set expansion, and the coboundary-expansion constants of
generalized repetition and surface codes.
"""

from .complexes import (
    ChainComplex3,
    ClassicalCode,
    CodeReport,
    bpt_bounds,
    check_small_set_expansion,
    classical_params,
    classical_soundness,
    css_dimension,
    css_distance,
    energy_barrier,
    measure,
    surface_code,
    validate,
)
from .f2 import BitVector, GuardExceeded, SparseBitMatrix, kernel_basis, min_weight_nontrivial, rank, solve
from .generalized import (
    BoundaryComplex,
    BoundaryGraph,
    boundary_graph_product,
    check_boundary_expansion,
    check_functional_inequalities,
    derive_corollary_bounds,
    generalized_repetition,
    generalized_surface,
)
from .products import (
    ActedBipartiteGraph,
    GroupTable,
    SquareComplex,
    balanced_product_codes,
    balanced_product_graphs,
    check_cayley_iso,
    cyclic_group,
    dihedral_group,
    left_right_cayley,
    tanner_code,
)
from .subdivision import (
    SubdividedComplex,
    clean_vector,
    lift,
    project,
    subdivide,
    verify_chain_map,
    verify_dimension_preservation,
)
from .embedding import LatticeEmbedding, embed_graph, embed_square, embed_subdivided, stack, verify_embedding
from .classical import classical_clean, subdivide_classical, verify_classical_lemma

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
