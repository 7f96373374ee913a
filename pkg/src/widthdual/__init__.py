"""Partition-set duality for width parameters: merge closures, structural
property checks, and tree-versus-bramble certificates for treewidth,
branchwidth and rankwidth of small graphs."""

from .config import CapExceeded
from .core import (
    GroundSet,
    PointedPartition,
    canonical,
    complement,
    enumerate_partitions,
    is_finer,
    is_strongly_finer,
    make_family,
    make_partition,
    merge,
    overlap,
    pointed,
    remove_from,
)
from .duality import (
    SmallSetSystem,
    UpFamily,
    construct_big_bramble,
    find_big_bramble,
    is_big_bramble,
    is_bramble,
    is_small_partition,
    non_dualising_witness,
)
from .engine import Certificate, certify, compute_width, find_compatible_tree, parse_graph, verify_certificate
from .functions import (
    Graph,
    border,
    cut_rank_f,
    level_set,
    max_f,
    vertex_boundary_f,
    verify_connectivity,
)
from .properties import (
    indicator_pf,
    is_dualising,
    is_pushing,
    is_refining,
    is_strongly_refining,
    is_submodular_pf,
    is_weakly_submodular_new,
    is_weakly_submodular_old,
)
from .trees import ClosureTable, PartitioningTree, closure, decompose, merge_trees, witness_tree

__all__ = [
    "CapExceeded",
    "GroundSet",
    "PointedPartition",
    "canonical",
    "complement",
    "enumerate_partitions",
    "is_finer",
    "is_strongly_finer",
    "make_family",
    "make_partition",
    "merge",
    "overlap",
    "pointed",
    "remove_from",
    "SmallSetSystem",
    "UpFamily",
    "construct_big_bramble",
    "find_big_bramble",
    "is_big_bramble",
    "is_bramble",
    "is_small_partition",
    "non_dualising_witness",
    "Certificate",
    "certify",
    "compute_width",
    "find_compatible_tree",
    "parse_graph",
    "verify_certificate",
    "Graph",
    "border",
    "cut_rank_f",
    "level_set",
    "max_f",
    "vertex_boundary_f",
    "verify_connectivity",
    "indicator_pf",
    "is_dualising",
    "is_pushing",
    "is_refining",
    "is_strongly_refining",
    "is_submodular_pf",
    "is_weakly_submodular_new",
    "is_weakly_submodular_old",
    "ClosureTable",
    "PartitioningTree",
    "closure",
    "decompose",
    "merge_trees",
    "witness_tree",
]

__version__ = "0.1.0"
