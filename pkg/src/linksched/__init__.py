"""Time-slotted link scheduling under one-hop interference.

Schedulers (node-service-balanced and baselines), exact matching
engines, arrival generators, and evacuation/throughput run loops.
"""

from .engine import (
    EvacTrace,
    MetricsRecord,
    check_frame_drain,
    evacuation_lower_bound,
    is_bipartite,
    queue_trend_ratio,
    run_evacuation,
    run_throughput,
)
from .graph import (
    EvacInstance,
    Matching,
    NetworkState,
    Topology,
    apply_slot,
    classify_nodes,
    node_workload,
    node_workloads,
    validate_matching,
)
from .matching import (
    brute_force_matching_oracle,
    greedy_maximal_matching,
    matching_covers_exists,
    max_vertex_weight_matching,
    max_weight_matching,
    maximal_matching,
)
from .policies import (
    Policy,
    lcnsb_weights,
    nsb_weights,
    schedule,
    service_indicator,
)
from .traffic import TrafficModel, sample_arrivals, solve_zipf_exponent

__version__ = "0.1.0"

__all__ = [
    "EvacInstance",
    "EvacTrace",
    "Matching",
    "MetricsRecord",
    "NetworkState",
    "Policy",
    "Topology",
    "TrafficModel",
    "apply_slot",
    "brute_force_matching_oracle",
    "check_frame_drain",
    "classify_nodes",
    "evacuation_lower_bound",
    "greedy_maximal_matching",
    "is_bipartite",
    "lcnsb_weights",
    "matching_covers_exists",
    "max_vertex_weight_matching",
    "max_weight_matching",
    "maximal_matching",
    "node_workload",
    "node_workloads",
    "nsb_weights",
    "queue_trend_ratio",
    "run_evacuation",
    "run_throughput",
    "sample_arrivals",
    "schedule",
    "service_indicator",
    "solve_zipf_exponent",
    "validate_matching",
]
