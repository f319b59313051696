"""Exact lattice kernel."""

from .core import (
    Embedding,
    IntegerLattice,
    LatticeVector,
    direct_sum,
    hyperbolic_plane,
    inner_product,
    lattice_from_dual_graph,
    make_L10,
    reflect,
    reflection_matrix,
    rescale,
)
from .roots import ADEType, ade_type, dynkin_graph, dynkin_lattice, enumerate_roots, root_count, simple_roots
from .shortvec import Box, box_vectors, definite_vectors
from .sublattice import (
    DiscriminantData,
    MRLattice,
    build_MR,
    closure_index,
    discriminant_group,
    embed_by_graph,
    is_primitive,
    orthogonal_complement_primitive,
    primitive_closure,
    smith_normal_form,
    sublattice_from_vectors,
)

__all__ = [
    "ADEType",
    "Box",
    "DiscriminantData",
    "Embedding",
    "IntegerLattice",
    "LatticeVector",
    "MRLattice",
    "ade_type",
    "box_vectors",
    "build_MR",
    "closure_index",
    "definite_vectors",
    "direct_sum",
    "discriminant_group",
    "dynkin_graph",
    "dynkin_lattice",
    "embed_by_graph",
    "enumerate_roots",
    "hyperbolic_plane",
    "inner_product",
    "is_primitive",
    "lattice_from_dual_graph",
    "make_L10",
    "orthogonal_complement_primitive",
    "primitive_closure",
    "reflect",
    "reflection_matrix",
    "rescale",
    "root_count",
    "simple_roots",
    "smith_normal_form",
    "sublattice_from_vectors",
]
