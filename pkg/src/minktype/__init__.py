"""Exact constructions of the cohomological K-types of U(a, b) in Λp.

The public surface re-exports the main entry points of each submodule.
"""
from .extalg import Multivector, coproduct_component, inner_product, k_action, wedge
from .ktypes import (
    KTypeSubspace,
    contains,
    generator_vector,
    ktype_subspace,
    project_onto,
    subspace_equal,
)
from .liealg import BasisIndex, EmbeddingShape, embedding_basis_map, minus, parabolic_from_dominant, plus
from .shapes import (
    DominantElement,
    GroupShape,
    Partition,
    PartitionPair,
    cohomological_degree,
    dominant_from_pair,
    enumerate_compatible,
    is_admissible_skew,
    is_compatible,
    partitions_from_dominant,
    rectangle_pair,
)
from .verify import (
    CheckReport,
    check_omega_prim,
    check_restriction,
    check_t_image_equality,
    check_t_nonvanishing,
    check_tensor_inclusion,
    omega_vector,
    run_suite,
    t_map_image,
)

__version__ = "0.1.0"
