"""Exact two-community recovery in signed stochastic block model graphs.

Typical use::

    from signedsbm import SsbmParams, sample, solve_estimated, compare

    graph, truth = sample(SsbmParams(1000, 16, 9, 1, 9), seed=0)
    result, est = solve_estimated(graph, seed=0)
    compare(result.labels, truth).exact
"""

from .estimation import (
    EstimatedParams,
    MleWeights,
    estimate_graph,
    estimate_params,
    mle_weights,
    solve_cubic_system,
    xi_exact,
)
from .evaluation import RecoveryMetrics, brute_force_mle, compare, mle_objective, objective
from .generate import GroundTruth, SsbmParams, it_gap, sample, sample_raw
from .graph import (
    EdgeListError,
    GraphMoments,
    SignedGraph,
    apply_signed,
    count_moments,
    format_edge_list,
    parse_edge_list,
    read_edge_list,
    write_edge_list,
)
from .solver import (
    DegenerateOperatorError,
    RecoveryResult,
    SolverConfig,
    WOperator,
    build_w,
    gpi_stage,
    power_stage,
    sign_project,
    solve,
    solve_estimated,
)

__version__ = "0.1.0"
