"""Consistent labelings of weighted ordered graphs and their algebraic uses.

An edge ``(i, j)`` with weight ``d`` asks for pairs ``(a_i, b_i)``,
``(a_j, b_j)`` with ``a_i*b_j - a_j*b_i = d``.  The engine answers with a
verified labeling, a defect certificate, or an explicit ``unknown``.
"""

from .bridge import (
    AlternatingStructure,
    ImageConfig,
    ImageDecision,
    NotInSpanError,
    decide_in_image,
    graph_of,
    presentations_of,
    radical,
    reduce,
    witness_dim_le3,
)
from .defects import DefectCertificate, detect_4B, detect_4C, detect_all, detect_mA, validate_certificate
from .engine import Decision, EngineConfig, Status, classify_shape, decide, label_cycle, label_four, label_tree
from .fields import Field, Scalar, scalar_arith, scalar_parse
from .graph import (
    Permutation,
    WeightedGraph,
    apply_permutation,
    connected_components,
    null_vertices,
    verify_labeling,
    weighted_isomorphic,
)
from .groups import ClassTwoGroup, decide_commutator, group_to_structure
from .oracle import enumerate_graphs, oracle_image, oracle_label

__version__ = "0.1.0"
