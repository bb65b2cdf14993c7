"""Matching engines over the interference graph.

Four per-slot matchers (exact edge-weighted, exact vertex-weighted,
greedy, first-fit maximal) plus a brute-force enumeration oracle used to
validate the exact ones on small instances.

Tie-breaking is pinned everywhere so runs are reproducible:
  * nodes rank by (higher weight, then lower node id);
  * links rank by (higher weight, then lower link id).
The exact matchers realize these rankings through a strict integer
perturbation of the weights: co-optimal solutions resolve toward the
ranking, every eligible link acquires strictly positive perturbed
weight (so the optimum is automatically maximal), and the vertex-
weighted matcher acquires the heaviest-covered property - whenever some
matching covers the s top-ranked nodes, the output covers them too, for
every s simultaneously.
"""

from __future__ import annotations

import numpy as np

from .blossom import solve_max_weight_matching
from .graph import Matching, Topology

ORACLE_MAX_LINKS = 20


def _as_weight_array(weights, size: int) -> np.ndarray:
    w = np.asarray(weights, dtype=np.int64)
    if w.shape != (size,):
        raise ValueError(f"weight vector must have length {size}")
    if (w < 0).any():
        raise ValueError("weights must be nonnegative")
    return w


def _check_headroom(max_weight: int, scale: int) -> None:
    # dual variables stay within a few multiples of the largest perturbed
    # weight; keep well inside int64
    if max_weight > (1 << 60) // scale:
        raise ValueError("weights too large for exact 64-bit matching arithmetic")


def _solve_on_eligible(
    topo: Topology, ids: np.ndarray, edge_weight: np.ndarray
) -> Matching:
    """Run the exact kernel on the eligible sub-graph; return link ids.

    Vertices are compacted to the endpoints of eligible links first, so
    lightly loaded states solve on a proportionally small graph.
    """
    eu0 = topo.link_u[ids]
    ev0 = topo.link_v[ids]
    nodes = np.unique(np.concatenate((eu0, ev0)))
    eu = np.searchsorted(nodes, eu0)
    ev = np.searchsorted(nodes, ev0)
    mate = solve_max_weight_matching(len(nodes), eu, ev, edge_weight)
    picked = mate[eu] == ev
    return tuple(int(l) for l in ids[picked])


def max_weight_matching(topo: Topology, eligible, edge_weight) -> Matching:
    """Matching maximizing total link weight over eligible links.

    Co-optimal solutions resolve toward lower link ids; every eligible
    link gets positive perturbed weight, so the result is maximal.
    """
    elig = np.asarray(eligible, dtype=bool)
    w = _as_weight_array(edge_weight, topo.m)
    ids = np.flatnonzero(elig)
    if ids.size == 0:
        return ()
    # Strict perturbation: the scale exceeds any achievable bonus sum, so
    # the raw objective is never sacrificed for the tie-break.
    m_el = np.int64(ids.size)
    scale = m_el * m_el + 1
    _check_headroom(int(w[ids].max(initial=0)), int(scale))
    bonus = np.arange(m_el, 0, -1, dtype=np.int64)
    return _solve_on_eligible(topo, ids, w[ids] * scale + bonus)


def perturbed_node_weights(topo: Topology, node_weight) -> np.ndarray:
    """Strictly ranked node weights: (raw weight, then lower node id)."""
    w = _as_weight_array(node_weight, topo.n)
    n = np.int64(topo.n)
    scale = n * n + 1
    _check_headroom(int(w.max(initial=0)), int(scale))
    return w * scale + np.arange(n - 1, -1, -1, dtype=np.int64)


def max_vertex_weight_matching(topo: Topology, eligible, node_weight) -> Matching:
    """Matching maximizing the summed weight of matched nodes.

    Reduces to edge-weighted matching with edge weight w(u)+w(v). The
    strict node ranking makes the output cover the s heaviest nodes
    whenever any matching can, for every s, and keeps it maximal.
    """
    elig = np.asarray(eligible, dtype=bool)
    pw = perturbed_node_weights(topo, node_weight)
    ids = np.flatnonzero(elig)
    if ids.size == 0:
        return ()
    return _solve_on_eligible(topo, ids, pw[topo.link_u[ids]] + pw[topo.link_v[ids]])


def greedy_maximal_matching(topo: Topology, eligible, edge_weight) -> Matching:
    """Heaviest-link-first greedy matching (ties to the lowest link id)."""
    elig = np.asarray(eligible, dtype=bool)
    w = _as_weight_array(edge_weight, topo.m)
    ids = np.flatnonzero(elig)
    order = ids[np.lexsort((ids, -w[ids]))]
    used = np.zeros(topo.n, dtype=bool)
    chosen: list[int] = []
    for l in order:
        u = topo.link_u[l]
        v = topo.link_v[l]
        if not used[u] and not used[v]:
            chosen.append(int(l))
            used[u] = used[v] = True
    return tuple(sorted(chosen))


def maximal_matching(topo: Topology, eligible) -> Matching:
    """Load-agnostic first-fit maximal matching in link-id order."""
    elig = np.asarray(eligible, dtype=bool)
    used = np.zeros(topo.n, dtype=bool)
    chosen: list[int] = []
    for l in np.flatnonzero(elig):
        u = topo.link_u[l]
        v = topo.link_v[l]
        if not used[u] and not used[v]:
            chosen.append(int(l))
            used[u] = used[v] = True
    return tuple(chosen)


def brute_force_matching_oracle(
    topo: Topology,
    eligible,
    scoring: str,
    weights,
) -> tuple[int, Matching]:
    """Enumerate every matching over the eligible links; return the optimum.

    ``scoring`` is "edge-sum" (weights indexed by link) or
    "matched-node-sum" (weights indexed by node). Instances with more
    than ORACLE_MAX_LINKS eligible links are rejected.
    """
    elig = np.asarray(eligible, dtype=bool)
    ids = [int(l) for l in np.flatnonzero(elig)]
    if len(ids) > ORACLE_MAX_LINKS:
        raise ValueError(
            f"{len(ids)} eligible links exceed the enumeration bound {ORACLE_MAX_LINKS}"
        )
    if scoring == "edge-sum":
        w = _as_weight_array(weights, topo.m)

        def gain(l: int) -> int:
            return int(w[l])

    elif scoring == "matched-node-sum":
        w = _as_weight_array(weights, topo.n)

        def gain(l: int) -> int:
            u, v = topo.links[l]
            return int(w[u] + w[v])

    else:
        raise ValueError(f"unknown scoring {scoring!r}")

    best_score = 0
    best_links: tuple[int, ...] = ()

    def rec(i: int, used: frozenset[int], score: int, picked: tuple[int, ...]) -> None:
        nonlocal best_score, best_links
        if score > best_score:
            best_score = score
            best_links = picked
        if i == len(ids):
            return
        l = ids[i]
        u, v = topo.links[l]
        if u not in used and v not in used:
            rec(i + 1, used | {u, v}, score + gain(l), picked + (l,))
        rec(i + 1, used, score, picked)

    rec(0, frozenset(), 0, ())
    return best_score, tuple(sorted(best_links))


def matching_covers_exists(topo: Topology, eligible, nodes: frozenset[int]) -> bool:
    """Brute-force test: does any matching over eligible links cover
    every node in ``nodes``? Bounded like the oracle."""
    elig = np.asarray(eligible, dtype=bool)
    ids = [int(l) for l in np.flatnonzero(elig)]
    if len(ids) > ORACLE_MAX_LINKS:
        raise ValueError(
            f"{len(ids)} eligible links exceed the enumeration bound {ORACLE_MAX_LINKS}"
        )
    target = set(nodes)
    if not target:
        return True

    def rec(i: int, used: frozenset[int], covered: frozenset[int]) -> bool:
        if target <= covered:
            return True
        if i == len(ids):
            return False
        # Upper bound: every remaining link covers at most two targets.
        if len(target - covered) > 2 * (len(ids) - i):
            return False
        l = ids[i]
        u, v = topo.links[l]
        if u not in used and v not in used:
            if rec(i + 1, used | {u, v}, covered | {u, v}):
                return True
        return rec(i + 1, used, covered)

    return rec(0, frozenset(), frozenset())


def matched_nodes(topo: Topology, schedule: Matching) -> frozenset[int]:
    out: set[int] = set()
    for l in schedule:
        u, v = topo.links[l]
        out.add(u)
        out.add(v)
    return frozenset(out)


def ranked_nodes(node_weight) -> list[int]:
    """Node ids sorted by the module's total order: heavier first, then
    lower id."""
    w = np.asarray(node_weight, dtype=np.int64)
    return sorted(range(len(w)), key=lambda i: (-int(w[i]), i))
