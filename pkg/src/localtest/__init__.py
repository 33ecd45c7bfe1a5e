"""Constant-query property testing for bounded-degree graphs."""

from .exceptions import (
    AboveCap,
    CalibrationFailed,
    DegreeExceeded,
    GraphError,
    InfeasibleSpec,
    InvalidEdge,
    NoAdmissibleR,
    OutOfRange,
    ParseError,
    RadiusMismatch,
    SearchBudgetExceeded,
)
from .generators import GeneratorSpec, generate, parse_spec
from .graph import BoundedDegreeGraph, QueryOracle, build_graph, neighbor_query, validate_graph
from .hyperfinite import (
    LocalCutTable,
    PartitionCut,
    QProfile,
    build_local_cut_table,
    choose_R,
    enumerate_connected_sets,
    find_partition_exact,
    find_partition_greedy,
    q_profile,
    sample_local_cut,
    transfer_cut,
)
from .io import load_edge_list, save_edge_list
from .minors import edit_distance_to_minor_free, has_minor, is_planar_small
from .stats import (
    BallType,
    FrequencyVector,
    RootedBall,
    canonical_form,
    exact_frequency,
    extract_ball,
    rho_distance,
    rooted_isomorphic,
    sampled_frequency,
)
from .testers import (
    CalibrationProfile,
    ReferenceNet,
    TesterVerdict,
    build_reference_net,
    distinguish,
)

__version__ = "0.1.0"
