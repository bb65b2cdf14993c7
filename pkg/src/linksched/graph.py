"""Graph, queue-state, and slot-evolution primitives.

A network is an undirected simple graph whose links carry integer packet
queues. One-hop interference means a feasible per-slot schedule is a
matching: no two scheduled links may share a node, and only links with a
non-empty queue may be scheduled.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

Matching = tuple[int, ...]


@dataclass(frozen=True)
class Topology:
    """Immutable interference graph: ``n`` nodes, simple undirected links.

    ``links[l] = (u, v)`` with ``u < v``; ``adjacency[i]`` lists the link
    ids incident to node ``i``. Packet multiplicity lives in queue state,
    never in the topology (no parallel links, no self-loops).
    """

    n: int
    links: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(init=False, repr=False)
    link_u: np.ndarray = field(init=False, repr=False, compare=False)
    link_v: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("node count must be nonnegative")
        seen: set[tuple[int, int]] = set()
        norm: list[tuple[int, int]] = []
        for lid, (u, v) in enumerate(self.links):
            if u == v:
                raise ValueError(f"link {lid} is a self-loop ({u},{v})")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"link {lid} endpoint out of range: ({u},{v})")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise ValueError(f"duplicate link {key}; use queue multiplicity instead")
            seen.add(key)
            norm.append(key)
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for lid, (u, v) in enumerate(norm):
            adj[u].append(lid)
            adj[v].append(lid)
        object.__setattr__(self, "links", tuple(norm))
        object.__setattr__(self, "adjacency", tuple(tuple(a) for a in adj))
        if norm:
            arr = np.asarray(norm, dtype=np.int64)
            object.__setattr__(self, "link_u", arr[:, 0].copy())
            object.__setattr__(self, "link_v", arr[:, 1].copy())
        else:
            object.__setattr__(self, "link_u", np.empty(0, dtype=np.int64))
            object.__setattr__(self, "link_v", np.empty(0, dtype=np.int64))

    @property
    def m(self) -> int:
        return len(self.links)

    def endpoints(self) -> tuple[np.ndarray, np.ndarray]:
        """Link endpoints as two int64 arrays (empty-safe)."""
        return self.link_u, self.link_v

    def degree(self, i: int) -> int:
        return len(self.adjacency[i])


@dataclass(frozen=True)
class EvacInstance:
    """A topology plus initial per-link packet multiplicities.

    Conceptually a loopless multigraph: multiplicity y on link (u,v) means
    y parallel packets waiting on that link.
    """

    topo: Topology
    packets: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.packets) != self.topo.m:
            raise ValueError("packet vector length must equal link count")
        if any(p < 0 for p in self.packets):
            raise ValueError("packet multiplicities must be nonnegative")
        object.__setattr__(self, "packets", tuple(int(p) for p in self.packets))

    @property
    def total_packets(self) -> int:
        return sum(self.packets)


@dataclass
class NetworkState:
    """Mutable per-run queue state at the start of slot ``slot``.

    ``served_prev[i]`` / ``served_prev2[i]`` record whether node ``i`` was
    an endpoint of the schedule one / two slots ago; both are zero at slot
    0 (nothing is served before the run starts).
    """

    q: np.ndarray
    slot: int = 0
    served_prev: np.ndarray | None = None
    served_prev2: np.ndarray | None = None

    def __post_init__(self) -> None:
        self.q = np.asarray(self.q, dtype=np.int64)
        if (self.q < 0).any():
            raise ValueError("queue lengths must be nonnegative")

    @classmethod
    def initial(cls, topo: Topology, packets=None) -> "NetworkState":
        q = np.zeros(topo.m, dtype=np.int64)
        if packets is not None:
            q[:] = np.asarray(packets, dtype=np.int64)
        return cls(
            q=q,
            slot=0,
            served_prev=np.zeros(topo.n, dtype=np.int64),
            served_prev2=np.zeros(topo.n, dtype=np.int64),
        )

    def copy(self) -> "NetworkState":
        return NetworkState(
            q=self.q.copy(),
            slot=self.slot,
            served_prev=self.served_prev.copy(),
            served_prev2=self.served_prev2.copy(),
        )

    @property
    def total_queue(self) -> int:
        return int(self.q.sum())


def node_workload(state: NetworkState, topo: Topology, i: int) -> int:
    """Total packets on the links incident to node ``i``."""
    if not (0 <= i < topo.n):
        raise ValueError(f"node id {i} out of range [0,{topo.n})")
    return int(sum(state.q[l] for l in topo.adjacency[i]))


def node_workloads(state: NetworkState, topo: Topology) -> np.ndarray:
    """Per-node workload vector (sum of incident queue lengths)."""
    w = np.zeros(topo.n, dtype=np.int64)
    if topo.m:
        u, v = topo.endpoints()
        np.add.at(w, u, state.q)
        np.add.at(w, v, state.q)
    return w


def heavy_critical_masks(workloads: np.ndarray, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Boolean (heavy, critical) masks over per-node workloads.

    Heavy means workload >= (n-1)/n of the maximum, compared in
    cross-multiplied integers so ties are exact; both sets are empty
    when nothing is queued.
    """
    delta = int(workloads.max()) if n else 0
    if delta == 0:
        z = np.zeros(n, dtype=bool)
        return z, z
    return n * workloads >= (n - 1) * delta, workloads == delta


def classify_nodes(
    state: NetworkState, topo: Topology
) -> tuple[int, frozenset[int], frozenset[int]]:
    """Return (max workload, critical node set, heavy node set).

    Critical nodes attain the maximum workload; heavy nodes clear the
    (n-1)/n threshold. An empty network (max workload 0) has empty sets.
    """
    w = node_workloads(state, topo)
    delta = int(w.max()) if topo.n else 0
    heavy_mask, critical_mask = heavy_critical_masks(w, topo.n)
    critical = frozenset(int(i) for i in np.flatnonzero(critical_mask))
    heavy = frozenset(int(i) for i in np.flatnonzero(heavy_mask))
    return delta, critical, heavy


def validate_matching(topo: Topology, state: NetworkState, schedule: Matching) -> None:
    """Raise ValueError unless ``schedule`` is feasible for ``state``.

    Feasible: link ids in range, pairwise node-disjoint, and every
    scheduled link has a non-empty queue.
    """
    used: set[int] = set()
    seen_links: set[int] = set()
    for l in schedule:
        if not (0 <= l < topo.m):
            raise ValueError(f"link id {l} out of range")
        if l in seen_links:
            raise ValueError(f"link {l} scheduled twice")
        seen_links.add(l)
        if state.q[l] <= 0:
            raise ValueError(f"link {l} has an empty queue")
        u, v = topo.links[l]
        if u in used or v in used:
            raise ValueError(f"link {l} shares a node with another scheduled link")
        used.add(u)
        used.add(v)


def apply_slot(
    state: NetworkState,
    topo: Topology,
    schedule: Matching,
    arrivals: np.ndarray | None = None,
) -> NetworkState:
    """Advance one slot: serve ``schedule``, then credit next-slot arrivals.

    Each scheduled link transmits one packet. Arrivals passed here are the
    packets credited at the start of slot ``state.slot + 1``; they are
    eligible for service in that slot (a schedule always sees queues that
    already include the current slot's arrivals).
    """
    validate_matching(topo, state, schedule)
    q = state.q.copy()
    served = np.zeros(topo.n, dtype=np.int64)
    for l in schedule:
        q[l] -= 1
        u, v = topo.links[l]
        served[u] = 1
        served[v] = 1
    if arrivals is not None:
        arr = np.asarray(arrivals, dtype=np.int64)
        if arr.shape != q.shape:
            raise ValueError("arrival vector length must equal link count")
        if (arr < 0).any():
            raise ValueError("arrivals must be nonnegative")
        q += arr
    return NetworkState(
        q=q,
        slot=state.slot + 1,
        served_prev=served,
        served_prev2=state.served_prev.copy(),
    )
