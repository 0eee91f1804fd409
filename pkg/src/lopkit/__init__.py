"""Toolkit for the linear ordering problem (LOP).

Maximize the sum of upper-triangular entries of a square matrix under a
simultaneous row/column permutation.  The package decomposes any instance
into a polynomially solvable part plus a hardness-carrying part, provides
exact solvers, four univariate constructive heuristics, seeded instance
generators for each component, and an experiment harness that sweeps the
weight of the hard component.

Conventions: permutations are 0-based one-line numpy arrays, ``perm[k]``
being the element placed at position ``k``.  Matrices are float64 with a
zero diagonal.
"""

from .core import (
    LopInstance,
    ResourceLimitError,
    adjacent_swap_delta,
    cyclic_shift,
    evaluate,
    mean_value,
    net_flow,
    read_instance,
    relative_error,
    swap_positions,
    write_instance,
)
from .components import (
    ComponentPair,
    boundary_mean,
    is_np_component,
    is_p_component,
    lift_np,
    marginal_sum,
    marginal_table,
    np_violation,
    p_violation,
    positional_mean,
    positional_mean_delta,
    prefix_mean,
    prefix_mean_delta,
    reconstruct_first_order,
    split,
)
from .solvers import ExactResult, solve_exhaustive, solve_lap_max, solve_p_exact
from .constructives import becker, becker_shift, construct_cm, construct_s, construct_ss
from .generators import RngSeed, compose, gen_np_component, gen_p_component, gen_uniform
from .harness import (
    ALGORITHMS,
    AggregateRow,
    ErrorRecord,
    ExperimentConfig,
    aggregate,
    emit_plot_data,
    run_experiment,
    verify,
    write_aggregate_csv,
    write_records_csv,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "AggregateRow",
    "ComponentPair",
    "ErrorRecord",
    "ExactResult",
    "ExperimentConfig",
    "LopInstance",
    "ResourceLimitError",
    "RngSeed",
    "adjacent_swap_delta",
    "aggregate",
    "becker",
    "becker_shift",
    "boundary_mean",
    "compose",
    "construct_cm",
    "construct_s",
    "construct_ss",
    "cyclic_shift",
    "emit_plot_data",
    "evaluate",
    "gen_np_component",
    "gen_p_component",
    "gen_uniform",
    "is_np_component",
    "is_p_component",
    "lift_np",
    "marginal_sum",
    "marginal_table",
    "mean_value",
    "net_flow",
    "np_violation",
    "p_violation",
    "positional_mean",
    "positional_mean_delta",
    "prefix_mean",
    "prefix_mean_delta",
    "read_instance",
    "reconstruct_first_order",
    "relative_error",
    "run_experiment",
    "solve_exhaustive",
    "solve_lap_max",
    "solve_p_exact",
    "split",
    "swap_positions",
    "verify",
    "write_aggregate_csv",
    "write_instance",
    "write_records_csv",
]
