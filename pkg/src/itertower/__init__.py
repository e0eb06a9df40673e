"""Exact computations for iterated polynomial towers phi^n(x) - t."""

from .algebra import (Poly, compose, discriminant, iterate, resultant, simon_identity_check,
                      sylvester_resultant, tower_poly)
from .discrim import (disc_at, disc_tower_direct, disc_tower_recursive, eisenstein_check,
                      good_reduction, monogenic_x2m2, ramified_set, root_disc_sequence,
                      tame_conditions, wild_report)
from .dynamics import (NotPCF, PCF, Unknown, branch_data, cfsr_normalized, cfsr_verify,
                       chebyshev, critical_data, is_pcf, orbit_shape, post_critical_set,
                       quad_normal_form)
from .errors import HypothesisError, InternalError, TowerError
from .finitefield import DegreeCensus, ddf_census, make_field
from .fungraph import (adjacency_matrix, build_graph, component_structure, degree_table,
                       dot_export, graph_sequence_period, path_count, prime_degree_counts,
                       quotient_graph, splitting_crosscheck)
from .parsing import parse_poly

__version__ = "0.1.0"

__all__ = [
    "Poly", "compose", "discriminant", "iterate", "resultant", "simon_identity_check",
    "sylvester_resultant", "tower_poly",
    "disc_at", "disc_tower_direct", "disc_tower_recursive", "eisenstein_check",
    "good_reduction", "monogenic_x2m2", "ramified_set", "root_disc_sequence",
    "tame_conditions", "wild_report",
    "NotPCF", "PCF", "Unknown", "branch_data", "cfsr_normalized", "cfsr_verify", "chebyshev",
    "critical_data", "is_pcf", "orbit_shape", "post_critical_set", "quad_normal_form",
    "HypothesisError", "InternalError", "TowerError",
    "DegreeCensus", "ddf_census", "make_field",
    "adjacency_matrix", "build_graph", "component_structure", "degree_table", "dot_export",
    "graph_sequence_period", "path_count", "prime_degree_counts", "quotient_graph",
    "splitting_crosscheck",
    "parse_poly",
]
