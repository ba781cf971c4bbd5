"""Minimum-redundancy prefix codes.

Construction of optimal codeword lengths without materializing the code
tree, reference oracles, validity checkers, and a canonical bit codec.
"""

from .core import (CodeLengthProfile, ComparisonCounter, ConstructionStats,
                   InvalidAssignmentError, LevelState, LevelTraceEntry,
                   WeightItem, WeightList, assignment_from_lengths, code_cost,
                   distinct_length_count, kraft_sum, monotone,
                   verify_exclusion)
from .selection import RankedGroup, find_median, select_rank, weighted_median
from .split import (LeafSlice, SplitResult, add_weights, cut,
                    find_splitting_all, find_splitting_internal,
                    find_t_largest, find_t_smallest, node_count)
from .construct import (ConstructionMode, PendingPool, assign_level0,
                        assign_weights_to_level, compute_next_level,
                        construct_lengths, count_nodes, maintain_kraft)
from .oracle import brute_force_optimal, huffman_lengths, huffman_sorted_lengths
from .codec import (CanonicalTable, ContainerFormatError, DecodeError,
                    canonical_codes, decode, encode, pack_container,
                    unpack_container)

__version__ = "0.1.0"

__all__ = [
    "CanonicalTable", "CodeLengthProfile", "ComparisonCounter",
    "ConstructionMode", "ConstructionStats", "ContainerFormatError",
    "DecodeError", "InvalidAssignmentError", "LeafSlice", "LevelState",
    "LevelTraceEntry", "PendingPool", "RankedGroup", "SplitResult",
    "WeightItem", "WeightList", "add_weights", "assign_level0",
    "assign_weights_to_level", "assignment_from_lengths",
    "brute_force_optimal", "canonical_codes", "code_cost",
    "compute_next_level", "construct_lengths", "count_nodes", "cut",
    "decode", "distinct_length_count", "encode", "find_median",
    "find_splitting_all", "find_splitting_internal", "find_t_largest",
    "find_t_smallest", "huffman_lengths", "huffman_sorted_lengths",
    "kraft_sum", "maintain_kraft", "monotone", "node_count",
    "pack_container", "select_rank", "unpack_container", "verify_exclusion",
    "weighted_median",
]
