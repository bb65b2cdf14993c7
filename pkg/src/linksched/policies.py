"""Per-slot scheduling policies.

Six policies map a queue state to one slot's matching:

  * nsb    - node-service-balanced: maximum vertex-weighted matching with
             workload-based weights, doubled for heavy nodes that missed
             service in the current 3-slot frame.
  * lcnsb  - the bounded-weight variant: five fixed priority levels
             {1..5} driven only by critical/heavy membership and recent
             service, cheaper to rank but same guarantees.
  * mvm    - maximum vertex-weighted matching on raw workloads.
  * mwm    - maximum edge-weighted matching on queue lengths.
  * gmm    - greedy heaviest-link-first maximal matching.
  * mm     - load-agnostic first-fit maximal matching.

Frames are absolute: slots {3k', 3k'+1, 3k'+2} form frame k'.
"""

from __future__ import annotations

from enum import Enum

import numpy as np

from .graph import (
    Matching,
    NetworkState,
    Topology,
    heavy_critical_masks,
    node_workloads,
)
from .matching import (
    greedy_maximal_matching,
    max_vertex_weight_matching,
    max_weight_matching,
    maximal_matching,
)


class Policy(str, Enum):
    NSB = "nsb"
    LCNSB = "lcnsb"
    MVM = "mvm"
    MWM = "mwm"
    GMM = "gmm"
    MM = "mm"

    @classmethod
    def parse(cls, text: str) -> "Policy":
        try:
            return cls(text.strip().lower())
        except ValueError:
            valid = ", ".join(p.value for p in cls)
            raise ValueError(f"unknown policy {text!r}; expected one of: {valid}") from None


def service_indicator(state: NetworkState, i: int) -> int:
    """Recent-service flag U_i for the current slot.

    In the last slot of a frame (slot index k with k mod 3 == 2) a node
    counts as served only if it was served in both previous slots;
    otherwise the previous slot alone decides. History before slot 0 is
    all zeros.
    """
    if state.slot % 3 == 2:
        return int(state.served_prev[i] * state.served_prev2[i])
    return int(state.served_prev[i])


def service_indicators(state: NetworkState) -> np.ndarray:
    if state.slot % 3 == 2:
        return state.served_prev * state.served_prev2
    return state.served_prev.copy()


def nsb_weights(state: NetworkState, topo: Topology) -> np.ndarray:
    """Workload-based node weights, doubled for heavy under-served nodes."""
    q = node_workloads(state, topo)
    heavy, _ = heavy_critical_masks(q, topo.n)
    u = service_indicators(state)
    return np.where(heavy, q * (2 - u), q)


def lcnsb_weights(state: NetworkState, topo: Topology) -> np.ndarray:
    """Five-level priority weights: critical 5/3, heavy 4/2, rest 1."""
    q = node_workloads(state, topo)
    heavy, critical = heavy_critical_masks(q, topo.n)
    u = service_indicators(state)
    w = np.ones(topo.n, dtype=np.int64)
    w[heavy] = (4 - 2 * u)[heavy]
    w[critical] = (5 - 2 * u)[critical]
    return w


def schedule(policy: Policy, state: NetworkState, topo: Topology) -> Matching:
    """Compute one slot's schedule: a maximal matching over loaded links.

    Links with an empty queue are never scheduled. Whenever any link is
    eligible the result is nonempty (maximality), so evacuation always
    makes progress.
    """
    eligible = state.q > 0
    if not eligible.any():
        return ()
    if policy is Policy.NSB:
        return max_vertex_weight_matching(topo, eligible, nsb_weights(state, topo))
    if policy is Policy.LCNSB:
        return max_vertex_weight_matching(topo, eligible, lcnsb_weights(state, topo))
    if policy is Policy.MVM:
        return max_vertex_weight_matching(topo, eligible, node_workloads(state, topo))
    if policy is Policy.MWM:
        return max_weight_matching(topo, eligible, state.q)
    if policy is Policy.GMM:
        return greedy_maximal_matching(topo, eligible, state.q)
    if policy is Policy.MM:
        return maximal_matching(topo, eligible)
    raise ValueError(f"unhandled policy {policy}")
