from .smith import AbelianInvariants, IntMatrix, cokernel, rank, smith_normal_form
from .poly import PolyMatrix, poly_str, qt_smith
from .module import CircleReport, ModulePresentation, ZtQuotients, circle_theorem_check, zt_quotients
from .graph import (
    Edge,
    Graph,
    Substitution,
    Term,
    compose_substitutions,
    crystal_substitution_matrix,
    edge_move_substitution,
    graph_e,
    graph_f,
    graph_substitution_matrix,
    named_graph,
)
from .dynamics import DynamCokernels, dynam_cokernels, truncation_maps

__all__ = [
    "IntMatrix",
    "AbelianInvariants",
    "smith_normal_form",
    "rank",
    "cokernel",
    "PolyMatrix",
    "qt_smith",
    "poly_str",
    "ModulePresentation",
    "ZtQuotients",
    "zt_quotients",
    "CircleReport",
    "circle_theorem_check",
    "Edge",
    "Graph",
    "Term",
    "Substitution",
    "graph_e",
    "graph_f",
    "named_graph",
    "edge_move_substitution",
    "graph_substitution_matrix",
    "crystal_substitution_matrix",
    "compose_substitutions",
    "DynamCokernels",
    "dynam_cokernels",
    "truncation_maps",
]
