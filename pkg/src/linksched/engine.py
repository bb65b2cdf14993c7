"""Run loops and run-level metrics.

Two modes: evacuation (drain a finite initial load, no arrivals) and
throughput (continuous arrivals, long-run rates). Both advance the
state slot by slot through the scheduling policy under test.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .graph import EvacInstance, NetworkState, Topology, apply_slot, node_workloads
from .policies import Policy, schedule
from .traffic import TrafficModel, sample_arrivals


@dataclass
class EvacTrace:
    """Per-slot log of an evacuation run.

    ``delta[k]`` is the maximum node workload at the start of slot k;
    the final entry is 0 (drained). ``sched_size[k]`` counts the links
    scheduled in slot k.
    """

    delta: list[int] = field(default_factory=list)
    sched_size: list[int] = field(default_factory=list)


@dataclass
class MetricsRecord:
    mode: str
    policy: Policy
    evac_time: int | None = None
    delta0: int | None = None
    avg_total_queue: float | None = None
    departure_rate: np.ndarray | None = None
    total_slots: int | None = None
    warmup_slots: int | None = None
    trace: EvacTrace | None = None
    queue_samples: np.ndarray | None = None
    arrivals_total: int | None = None
    final_total_queue: int | None = None


def run_evacuation(
    instance: EvacInstance, policy: Policy, keep_trace: bool = True
) -> MetricsRecord:
    """Drain all initial packets; count the slots needed.

    Every policy emits a maximal matching over loaded links, so progress
    is guaranteed and the loop terminates.
    """
    topo = instance.topo
    state = NetworkState.initial(topo, instance.packets)
    delta0 = int(node_workloads(state, topo).max()) if topo.n else 0
    trace = EvacTrace() if keep_trace else None
    slots = 0
    while state.total_queue > 0:
        if trace is not None:
            trace.delta.append(int(node_workloads(state, topo).max()))
        m = schedule(policy, state, topo)
        if not m:
            raise RuntimeError("scheduler returned an empty schedule with load present")
        if trace is not None:
            trace.sched_size.append(len(m))
        state = apply_slot(state, topo, m, None)
        slots += 1
    if trace is not None:
        trace.delta.append(0)
    if slots < delta0:
        raise RuntimeError("evacuation finished below the node workload bound")
    return MetricsRecord(
        mode="evacuation",
        policy=policy,
        evac_time=slots,
        delta0=delta0,
        trace=trace,
    )


def run_throughput(
    topo: Topology,
    policy: Policy,
    traffic: TrafficModel,
    total_slots: int,
    warmup_slots: int,
) -> MetricsRecord:
    """Simulate ``total_slots`` slots of arrivals and service.

    Arrivals credited at the start of a slot are eligible for service in
    that same slot. The total queue is sampled at slot end, after
    departures and before the next slot's arrivals; the average covers
    slots >= warmup_slots. Departure rates are cumulative per-link
    services divided by total_slots.
    """
    if not 0 <= warmup_slots < total_slots:
        raise ValueError("warmup must be shorter than the run")
    state = NetworkState.initial(topo)
    first = sample_arrivals(traffic, topo.m, 0)
    state.q += first
    arrivals_total = int(first.sum())
    departures = np.zeros(topo.m, dtype=np.int64)
    samples = np.empty(total_slots - warmup_slots, dtype=np.int64)
    for k in range(total_slots):
        m = schedule(policy, state, topo)
        for l in m:
            departures[l] += 1
        if k >= warmup_slots:
            samples[k - warmup_slots] = state.total_queue - len(m)
        arr = None
        if k + 1 < total_slots:
            arr = sample_arrivals(traffic, topo.m, k + 1)
            arrivals_total += int(arr.sum())
        state = apply_slot(state, topo, m, arr)
    return MetricsRecord(
        mode="throughput",
        policy=policy,
        avg_total_queue=float(samples.mean()) if samples.size else 0.0,
        departure_rate=departures / float(total_slots),
        total_slots=total_slots,
        warmup_slots=warmup_slots,
        queue_samples=samples,
        arrivals_total=arrivals_total,
        final_total_queue=state.total_queue,
    )


def queue_trend_ratio(samples: np.ndarray) -> float:
    """Last-quarter mean total queue over third-quarter mean.

    A ratio near or below 1 indicates the backlog stopped growing after
    warmup; the stability check accepts ratios up to 1.2.
    """
    n = len(samples)
    if n < 4:
        raise ValueError("need at least 4 samples for a trend ratio")
    q3 = samples[n // 2 : 3 * n // 4]
    q4 = samples[3 * n // 4 :]
    mean3 = float(q3.mean())
    mean4 = float(q4.mean())
    if mean3 == 0.0:
        return 1.0 if mean4 == 0.0 else float("inf")
    return mean4 / mean3


def evacuation_lower_bound(instance: EvacInstance) -> int:
    """Max of the node-workload bound and the triangle bound.

    A node's incident packets drain at most one per slot; a triangle's
    packets drain at most one per slot as well (any matching uses at
    most one of its three links). Larger odd cycles are not searched.
    """
    topo = instance.topo
    state = NetworkState.initial(topo, instance.packets)
    bound = int(node_workloads(state, topo).max()) if topo.n else 0
    if topo.n >= 3 and topo.m >= 3:
        link_of: dict[tuple[int, int], int] = {
            (u, v): lid for lid, (u, v) in enumerate(topo.links)
        }
        adj = np.zeros((topo.n, topo.n), dtype=bool)
        for u, v in topo.links:
            adj[u, v] = adj[v, u] = True
        for lid, (u, v) in enumerate(topo.links):
            common = np.flatnonzero(adj[u] & adj[v])
            for w in common:
                if w <= v:
                    continue
                total = (
                    instance.packets[lid]
                    + instance.packets[link_of[(min(u, w), max(u, w))]]
                    + instance.packets[link_of[(min(v, w), max(v, w))]]
                )
                if total > bound:
                    bound = int(total)
    return bound


def check_frame_drain(delta_series: list[int]) -> tuple[bool, list[tuple[int, int, int]]]:
    """Verify the per-frame drain property on an evacuation's delta log.

    For every 3-slot frame whose starting maximum workload is >= 2, the
    workload at frame end must have dropped by at least 2. Returns
    (ok, violations) with violations as (frame index, start, end).
    """
    violations: list[tuple[int, int, int]] = []
    last = len(delta_series) - 1
    for p in range(0, last, 3):
        start = delta_series[p]
        if start < 2:
            continue
        end = delta_series[p + 3] if p + 3 <= last else 0
        if end > start - 2:
            violations.append((p // 3, start, end))
    return (not violations), violations


def is_bipartite(topo: Topology) -> tuple[bool, np.ndarray | None]:
    """Standard BFS 2-coloring; returns (flag, coloring or None)."""
    color = np.full(topo.n, -1, dtype=np.int64)
    for start in range(topo.n):
        if color[start] != -1:
            continue
        color[start] = 0
        dq = deque([start])
        while dq:
            x = dq.popleft()
            for lid in topo.adjacency[x]:
                u, v = topo.links[lid]
                y = v if u == x else u
                if color[y] == -1:
                    color[y] = 1 - color[x]
                    dq.append(y)
                elif color[y] == color[x]:
                    return False, None
    return True, color
