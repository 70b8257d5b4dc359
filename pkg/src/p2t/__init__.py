"""Toolkit for the NAE-SAT to two-tree partition (P2T) reduction."""

from .formula import (
    AssignmentError,
    Formula,
    FormulaError,
    Literal,
    bound_occurrences,
    is_good,
    parse_dimacs,
    random_formula,
    solve_nae_bruteforce,
    to_dimacs,
)
from .graph import (
    A,
    B,
    DegreeReport,
    EdgePartition,
    Graph,
    GraphError,
    PartitionError,
    Verdict,
    VertexLabel,
    degree_report,
    is_tree,
    verify_two_tree_partition,
)
from .reduction import (
    ReductionError,
    ReductionManifest,
    StructureError,
    expected_sizes,
    extract_assignment,
    reduce,
    witness_partition,
)
from .solver import (
    NO_PARTITION,
    PARTITION,
    TIMEOUT,
    SolveOutcome,
    iter_two_tree_partitions,
    solve_p2t,
    solve_p2t_naive,
)

__version__ = "0.1.0"
