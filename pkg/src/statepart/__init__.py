"""Partition LTI state-space models (A, B) into P weakly coupled,
controllable subsystems by exact 0-1 integer programming with
rank-test exclusion cuts."""

from .bilp import (
    BilpModel,
    BilpSolution,
    InternalSolverError,
    LinearConstraint,
    SolveAborted,
    SolverOptions,
    solve_bilp,
    solve_lp_relaxation,
)
from .cuts import controllability_cuts
from .engine import (
    OUTCOME_ABORTED,
    OUTCOME_CONTROLLABLE,
    OUTCOME_NO_PARTITION,
    PartitionOptions,
    SolveReport,
    partition,
)
from .formulation import VariableIndex, build_partitioning_bilp, canonicalize, decode_solution
from .model import (
    GroupingPair,
    StateSpaceModel,
    Subsystem,
    controllability_matrix,
    extract_partition,
    interaction_cost_blocks,
    interaction_cost_elements,
    is_controllable,
    validate_problem,
)
from .oracle import brute_force_optimum, count_partitionings, enumerate_groupings

__version__ = "0.1.0"

__all__ = [
    "BilpModel",
    "BilpSolution",
    "GroupingPair",
    "InternalSolverError",
    "LinearConstraint",
    "OUTCOME_ABORTED",
    "OUTCOME_CONTROLLABLE",
    "OUTCOME_NO_PARTITION",
    "PartitionOptions",
    "SolveAborted",
    "SolveReport",
    "SolverOptions",
    "StateSpaceModel",
    "Subsystem",
    "VariableIndex",
    "brute_force_optimum",
    "build_partitioning_bilp",
    "canonicalize",
    "controllability_cuts",
    "controllability_matrix",
    "count_partitionings",
    "decode_solution",
    "enumerate_groupings",
    "extract_partition",
    "interaction_cost_blocks",
    "interaction_cost_elements",
    "is_controllable",
    "partition",
    "solve_bilp",
    "solve_lp_relaxation",
    "validate_problem",
]
