"""Topology and benchmark-instance generators.

Seeded and deterministic: the same arguments always produce the same
object. Generators that the benchmarks only pin at the family level
(mesh, random) match published node/link counts; the drawn structure is
seed-dependent.
"""

from __future__ import annotations

import numpy as np

from .graph import EvacInstance, Topology


def gen_grid(rows: int, cols: int) -> Topology:
    """Rectangular lattice: rows*cols nodes, rows*(cols-1)+cols*(rows-1) links."""
    if rows < 2 or cols < 2:
        raise ValueError("grid needs at least 2 rows and 2 columns")
    links = []
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            if c + 1 < cols:
                links.append((i, i + 1))
            if r + 1 < rows:
                links.append((i, i + cols))
    return Topology(n=rows * cols, links=tuple(links))


def gen_spider(num_legs: int) -> EvacInstance:
    """Hub-and-legs evacuation benchmark with 2N+1 nodes for N legs.

    Leg i is hub - mid_i - tip_i. The outer link (mid_i, tip_i) starts
    with N packets, the spoke (hub, mid_i) with one, so every mid node
    has workload N+1 while the spokes all share the hub. Node-based
    policies drain it in N+1 slots; link-heavy policies burn the spokes
    one per slot and need about 2N.
    """
    if num_legs < 1:
        raise ValueError("need at least one leg")
    n = num_legs
    links: list[tuple[int, int]] = []
    packets: list[int] = []
    for i in range(n):
        mid = 1 + 2 * i
        tip = 2 + 2 * i
        links.append((mid, tip))
        packets.append(n)
        links.append((0, mid))
        packets.append(1)
    topo = Topology(n=2 * n + 1, links=tuple(links))
    return EvacInstance(topo=topo, packets=tuple(packets))


def gen_triangular_mesh(target_nodes: int, seed: int) -> Topology:
    """Delaunay triangulation of random points: planar, connected, with
    triangles; about 3*target_nodes links."""
    if target_nodes < 3:
        raise ValueError("a mesh needs at least 3 nodes")
    rng = np.random.default_rng(seed)
    while True:
        pts = rng.random((target_nodes, 2))
        from scipy.spatial import Delaunay, QhullError

        try:
            tess = Delaunay(pts)
        except QhullError:  # collinear draw; take a fresh sample
            continue
        edges: set[tuple[int, int]] = set()
        for simplex in tess.simplices:
            a, b, c = (int(x) for x in simplex)
            edges.add((min(a, b), max(a, b)))
            edges.add((min(b, c), max(b, c)))
            edges.add((min(a, c), max(a, c)))
        if len({v for e in edges for v in e}) == target_nodes:
            return Topology(n=target_nodes, links=tuple(sorted(edges)))


def gen_random_connected(n: int, m: int, seed: int) -> Topology:
    """Uniform random spanning tree plus uniform extra links; connected."""
    if n < 1:
        raise ValueError("need at least one node")
    max_m = n * (n - 1) // 2
    if not (n - 1 <= m <= max_m):
        raise ValueError(f"link count {m} infeasible for {n} nodes (range [{n - 1}, {max_m}])")
    rng = np.random.default_rng(seed)
    edges: set[tuple[int, int]] = set()
    if n >= 2:
        if n == 2:
            edges.add((0, 1))
        else:
            # Uniform labeled tree via a random Pruefer sequence.
            prufer = rng.integers(0, n, size=n - 2)
            degree = np.ones(n, dtype=np.int64)
            for x in prufer:
                degree[x] += 1
            import heapq

            leaves = [i for i in range(n) if degree[i] == 1]
            heapq.heapify(leaves)
            for x in prufer:
                leaf = heapq.heappop(leaves)
                edges.add((min(leaf, int(x)), max(leaf, int(x))))
                degree[x] -= 1
                if degree[x] == 1:
                    heapq.heappush(leaves, int(x))
            u, v = heapq.heappop(leaves), heapq.heappop(leaves)
            edges.add((min(u, v), max(u, v)))
    while len(edges) < m:
        u = int(rng.integers(0, n))
        v = int(rng.integers(0, n))
        if u == v:
            continue
        edges.add((min(u, v), max(u, v)))
    return Topology(n=n, links=tuple(sorted(edges)))


def gen_regular_multigraph(n: int, d: int, seed: int) -> EvacInstance:
    """Configuration-model multigraph where every node has workload d.

    Stubs are paired uniformly; self-loop pairs are repaired by swapping
    a stub with a random non-conflicting pair, preserving the degree
    sequence. Parallel edges become link multiplicity.
    """
    if n < 2:
        raise ValueError("need at least two nodes")
    if d < 1:
        raise ValueError("degree must be positive")
    if (n * d) % 2 != 0:
        raise ValueError("n*d must be even (handshake parity)")
    rng = np.random.default_rng(seed)
    stubs = np.repeat(np.arange(n, dtype=np.int64), d)
    rng.shuffle(stubs)
    a = stubs[0::2].copy()
    b = stubs[1::2].copy()
    while True:
        bad = np.flatnonzero(a == b)
        if bad.size == 0:
            break
        for i in bad:
            if a[i] != b[i]:
                continue
            while True:
                j = int(rng.integers(0, len(a)))
                if j != i and a[j] != a[i] and b[j] != a[i]:
                    break
            b[i], b[j] = b[j], b[i]
    mult: dict[tuple[int, int], int] = {}
    for u, v in zip(a.tolist(), b.tolist()):
        key = (min(u, v), max(u, v))
        mult[key] = mult.get(key, 0) + 1
    links = tuple(sorted(mult))
    topo = Topology(n=n, links=links)
    return EvacInstance(topo=topo, packets=tuple(mult[l] for l in links))


def assign_random_multiplicities(topo: Topology, max_y: int, seed: int) -> EvacInstance:
    """Load each link with an independent uniform multiplicity in {0..max_y}."""
    if max_y < 0:
        raise ValueError("max multiplicity must be nonnegative")
    rng = np.random.default_rng(seed)
    packets = rng.integers(0, max_y + 1, size=topo.m)
    return EvacInstance(topo=topo, packets=tuple(int(p) for p in packets))
