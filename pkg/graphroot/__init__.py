__version__ = "0.1.0"

from .core import (
    Edge,
    Graph,
    RootSolution,
    compute_square,
    is_square_root,
    connectivity_profile,
    simplicial_vertices,
    true_twin_partition,
)
from .rules import (
    LabeledInstance,
    apply_trimming_rule,
    apply_path_reduction_rule,
    apply_simplicial_reduction,
    kernel_vertex_bound,
    non_pendant_bound,
)
from .minroot import (
    has_tree_square_root,
    kernelize,
    solve_labeled,
    lift_solution,
    replay_trace,
    min_square_root,
)
from .maxroot import (
    build_aux_graph,
    check_root_charact,
    aingworth_prefilter,
    max_root_fpt,
    enumerate_maximal_independent_sets,
    max_root_exact,
)
from .oracle import (
    OracleQuery,
    oracle_enumerate_roots,
    oracle_min_root,
    oracle_max_root,
)
from .generators import (
    gen_tree_plus_k,
    gen_random_connected,
    gen_known_square,
    gen_planted_batch,
)
from .datafeeds import parse_graph_file, read_graph_file, write_graph_file, to_dot
from .survey import survey

__all__ = [
    "__version__",
    "Edge",
    "Graph",
    "RootSolution",
    "compute_square",
    "is_square_root",
    "connectivity_profile",
    "simplicial_vertices",
    "true_twin_partition",
    # Reduction rules
    "LabeledInstance",
    "apply_trimming_rule",
    "apply_path_reduction_rule",
    "apply_simplicial_reduction",
    "kernel_vertex_bound",
    "non_pendant_bound",
    # Minimum roots
    "has_tree_square_root",
    "kernelize",
    "solve_labeled",
    "lift_solution",
    "replay_trace",
    "min_square_root",
    # Maximum roots
    "build_aux_graph",
    "check_root_charact",
    "aingworth_prefilter",
    "max_root_fpt",
    "enumerate_maximal_independent_sets",
    "max_root_exact",
    # Brute force
    "OracleQuery",
    "oracle_enumerate_roots",
    "oracle_min_root",
    "oracle_max_root",
    # Instances
    "gen_tree_plus_k",
    "gen_random_connected",
    "gen_known_square",
    "gen_planted_batch",
    "parse_graph_file",
    "read_graph_file",
    "write_graph_file",
    "to_dot",
    "survey",
]
