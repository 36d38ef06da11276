from enum import Enum
from typing import List


class Origin(Enum):
    """Rule that placed an edge in the required set."""

    TRIM = "trim"
    PATH = "path"


class RuleStatus(Enum):
    NO_ANSWER = "no_answer"
    REDUCED = "reduced"
    NOT_APPLICABLE = "not_applicable"


class Prefilter(Enum):
    REJECT = "reject"
    PASS = "pass"
    TRIVIAL_YES = "trivial_yes"


class SquareFamily(Enum):
    CYCLE_SQUARE = "cycle_square"
    COMPLETE = "complete"
    UNION_TWO_CLIQUES = "union_two_cliques"


# brute-force enumeration refuses graphs with more edges than this
ORACLE_EDGE_CAP: int = 24

# keys of the machine-readable result object, in output order
result_keys: List[str] = [
    "answer",
    "edges",
    "deletions",
    "kernel_vertices",
    "rule_counts",
]

rule_count_keys: List[str] = ["trim", "path", "simplicial", "simplicial_deleted"]

generator_families: List[str] = [
    "tree_plus_k",
    "random_connected",
] + [f.value for f in SquareFamily]

# columns of a survey run before grouping
survey_cols: List[str] = [
    "n",
    "m",
    "k",
    "answer",
    "root_edges",
    "kernel_vertices",
    "kernel_bound",
] + rule_count_keys

survey_group_cols: List[str] = ["n_range", "k"]

describe_cols: List[str] = [
    "count",
    "mean",
    "std",
    "min",
    "25%",
    "50%",
    "75%",
    "max",
]
