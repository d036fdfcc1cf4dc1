"""Basis-flag and partition domain with the abstract transfer functions."""
from qent.abstract.domain import AbstractElement
from qent.abstract.lattice import (
    BasisFlag,
    BasisMap,
    flag_join,
    flag_leq,
    flag_meet,
    map_join,
    map_leq,
    map_meet,
)
from qent.abstract.partition import (
    Partition,
    enumerate_partitions,
    pair_partition,
    partition_join,
    partition_leq,
    partition_meet,
    remove,
)
from qent.abstract.semantics import GuardOverlap, TraceResult, abstract_eval, trace_eval
from qent.abstract.text import (
    element_from_json,
    element_to_json,
    format_blocks,
    format_element,
    format_flags,
    parse_blocks,
    parse_element,
    parse_flags,
)

__all__ = [
    "AbstractElement",
    "BasisFlag",
    "BasisMap",
    "GuardOverlap",
    "Partition",
    "TraceResult",
    "abstract_eval",
    "element_from_json",
    "element_to_json",
    "enumerate_partitions",
    "flag_join",
    "flag_leq",
    "flag_meet",
    "format_blocks",
    "format_element",
    "format_flags",
    "map_join",
    "map_leq",
    "map_meet",
    "pair_partition",
    "parse_blocks",
    "parse_element",
    "parse_flags",
    "partition_join",
    "partition_leq",
    "partition_meet",
    "remove",
    "trace_eval",
]
