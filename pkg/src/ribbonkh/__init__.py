"""Khovanov homology of oriented ribbon graphs.

Exact integer Khovanov and reduced Khovanov homology of ribbon graphs
given as rotation systems or arrow presentations, the spanning quasi-tree
expansion with activity gradings, a converter from classical link diagrams
(PD codes) to their all-A ribbon graphs, and Reidemeister moves on arrow
presentations.
"""

__version__ = "0.1.0"

from .complexes import (BigradedComplex, EdgeAssignment, build_complex,
                        build_reduced_complex, complex_to_json,
                        random_edge_assignment, standard_edge_assignment)
from .homology import (BigradedGroup, CheckReport, LaurentPoly, check_duality,
                       check_grading_theorems, graded_euler_characteristic,
                       homological_width, homology, shift, smith_normal_form,
                       smith_normal_form_with_transforms)
from .links import (KauffmanState, PDCode, PDError, SignCount,
                    all_A_ribbon_graph, kauffman_state, parse_pd)
from .moves import (MOVE_SHIFTS, InvarianceReport, MoveError, MoveSite,
                    apply_move, check_invariance, find_sites)
from .quasitree import (ChordDiagram, QuasiTreeRecord, ResolutionLeaf,
                        activities, chord_diagram, gradings_via_activities,
                        is_differential_forced_zero, jones_expansion,
                        quasi_tree_masks_brute_force, quasi_trees,
                        resolution_tree_leaves)
from .ribbon import (ArrowPresentation, BoundaryWalkSet, NonOrientableError,
                     ParseError, RibbonGraph, RibbonGraphError,
                     check_orientable, emit_arrow_presentation,
                     from_rotation_words, parse_arrow_presentation,
                     to_arrow_presentation, to_ribbon_graph)

__all__ = [name for name in dir() if not name.startswith("_")]
