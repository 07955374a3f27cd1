"""Monotone minimal factorisations of the long cycle, their plane-tree
bijections and the associated lamination processes."""

from .perm import (BOTH, DECREASING, INCREASING, NEITHER, Factorisation, Transposition,
                   compose, enumerate_minimal_factorisations, enumerate_monotone_factorisations,
                   is_cycle_factorisation, is_decreasing, is_increasing, monotone_class)
from .tree import (LukaPath, PlaneTree, catalan, enumerate_plane_trees, lukasiewicz_path,
                   make_rng, sample_uniform_plane_tree, tree_from_path)
from .bijection import (LabeledTree, decreasing_factorisation_of_tree, decreasing_labels,
                        factorisation_from_edge_labels, increasing_factorisation_of_tree,
                        increasing_labels, next_vertex, t1_forward,
                        tree_of_decreasing_factorisation, tree_of_increasing_factorisation)
from .lamination import (Chord, Lamination, WalkExcursion, alignment_bound, alignment_time_change,
                         chords_cross, discrete_lamination_process, enumerate_good_cords,
                         good_cord_for_index, hausdorff_distance, is_good_cord, rank_data)

__all__ = [
    "BOTH", "DECREASING", "INCREASING", "NEITHER", "Factorisation", "Transposition", "compose",
    "enumerate_minimal_factorisations", "enumerate_monotone_factorisations",
    "is_cycle_factorisation", "is_decreasing", "is_increasing", "monotone_class", "LukaPath",
    "PlaneTree", "catalan", "enumerate_plane_trees", "lukasiewicz_path", "make_rng",
    "sample_uniform_plane_tree", "tree_from_path", "LabeledTree",
    "decreasing_factorisation_of_tree", "decreasing_labels", "factorisation_from_edge_labels",
    "increasing_factorisation_of_tree", "increasing_labels", "next_vertex", "t1_forward",
    "tree_of_decreasing_factorisation", "tree_of_increasing_factorisation", "Chord", "Lamination",
    "WalkExcursion", "alignment_bound", "alignment_time_change", "chords_cross",
    "discrete_lamination_process", "enumerate_good_cords", "good_cord_for_index",
    "hausdorff_distance", "is_good_cord", "rank_data",
]

__version__ = "0.1.0"
