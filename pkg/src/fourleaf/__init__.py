"""fourleaf: spanning trees with at most 4 leaves in K_{1,5}-free graphs.

Solver, refutation certificates, exact enumeration oracle, instance
families, and exhaustive desk-scale validation sweeps.
"""

from .certificates import (
    Certificate,
    Disconnected,
    InducedStar,
    InducedStarFound,
    LowSigmaWitness,
    verify_certificate,
)
from .conditions import SigmaReport, find_induced_star, hypotheses_hold, sigma_k
from .families import GenerationFailed, random_theorem_instance, sharpness_graph
from .graph import (
    FormatError,
    Graph,
    encode_graph6,
    format_edge_list,
    is_connected,
    neighbor_multiplicity,
    parse_edge_list,
    parse_graph6,
)
from .oracle import (
    OracleReport,
    SweepSummary,
    Violation,
    exhaustive_sweep,
    graph_from_mask,
    min_leaf_spanning_tree,
    random_sweep,
)
from .solver import (
    EXHAUSTED,
    InternalInvariantBreach,
    IterationGuardExceeded,
    Move,
    Refuted,
    Solved,
    TraceRecord,
    counting_certificate,
    find_move,
    grow_step,
    potential,
    solve,
)
from .tree import (
    CaseDecomposition,
    Exchange,
    ExchangeInvalid,
    NotFiveLeaves,
    Outcome,
    Shape,
    SpanningTree,
    apply_exchange,
    decompose,
    tree_path,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "CaseDecomposition",
    "Disconnected",
    "EXHAUSTED",
    "Exchange",
    "ExchangeInvalid",
    "FormatError",
    "GenerationFailed",
    "Graph",
    "InducedStar",
    "InducedStarFound",
    "InternalInvariantBreach",
    "IterationGuardExceeded",
    "LowSigmaWitness",
    "Move",
    "NotFiveLeaves",
    "OracleReport",
    "Outcome",
    "Refuted",
    "Shape",
    "SigmaReport",
    "Solved",
    "SpanningTree",
    "SweepSummary",
    "TraceRecord",
    "Violation",
    "apply_exchange",
    "counting_certificate",
    "decompose",
    "encode_graph6",
    "exhaustive_sweep",
    "find_induced_star",
    "find_move",
    "format_edge_list",
    "graph_from_mask",
    "grow_step",
    "hypotheses_hold",
    "is_connected",
    "min_leaf_spanning_tree",
    "neighbor_multiplicity",
    "parse_edge_list",
    "parse_graph6",
    "potential",
    "random_sweep",
    "random_theorem_instance",
    "sharpness_graph",
    "sigma_k",
    "solve",
    "tree_path",
    "verify_certificate",
]
