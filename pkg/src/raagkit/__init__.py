"""Computational toolkit for right-angled Artin groups: words, disk
diagrams, loxodromic classification, subgroup analysis, extension graph
balls and stability constants."""

from .classify import Verdict, classify, is_conjugate_into_star
from .diagram import (DiskDiagram, ReducingDiagram, build_diagram, cancellation_partition,
                      cancellation_pattern, comb, label_read, pattern_equal, reducing_diagram)
from .graph import DefiningGraph, Join, parse_graph
from .stability import (LatticePath, constants, elliptic_instability, hausdorff,
                        is_quasigeodesic, path_from_word, stability_check)
from .subgroup import Subgroup, enumerate_elements, intersect_with_subgraph
from .word import (Letter, Word, cyclic_reduce, equal, max_join_subword, normal_form,
                   parse_word, reduce, reduced, shuffle_class, star_length)

__all__ = [
    "DefiningGraph", "Join", "parse_graph",
    "Letter", "Word", "parse_word", "reduce", "reduced", "normal_form", "equal",
    "cyclic_reduce", "shuffle_class", "max_join_subword", "star_length",
    "DiskDiagram", "ReducingDiagram", "build_diagram", "comb", "label_read",
    "reducing_diagram", "cancellation_partition", "cancellation_pattern", "pattern_equal",
    "Verdict", "classify", "is_conjugate_into_star",
    "Subgroup", "enumerate_elements", "intersect_with_subgraph",
    "LatticePath", "constants", "path_from_word", "is_quasigeodesic", "hausdorff",
    "stability_check", "elliptic_instability",
]
