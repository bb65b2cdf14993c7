import numpy as np
import pytest

from linksched.engine import is_bipartite
from linksched.graph import NetworkState, node_workloads
from linksched.topologies import (
    assign_random_multiplicities,
    gen_grid,
    gen_random_connected,
    gen_regular_multigraph,
    gen_spider,
    gen_triangular_mesh,
)


def connected(topo):
    if topo.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for lid in topo.adjacency[x]:
            u, v = topo.links[lid]
            y = v if u == x else u
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == topo.n


class TestGrid:
    def test_4x4_counts(self):
        topo = gen_grid(4, 4)
        assert topo.n == 16
        assert topo.m == 24

    def test_unit_square(self):
        topo = gen_grid(2, 2)
        assert topo.n == 4
        assert topo.m == 4

    def test_degenerate_dims_rejected(self):
        with pytest.raises(ValueError):
            gen_grid(1, 5)

    def test_link_count_formula(self):
        for rows, cols in ((2, 3), (3, 5), (5, 2)):
            topo = gen_grid(rows, cols)
            assert topo.m == rows * (cols - 1) + cols * (rows - 1)
            assert connected(topo)


class TestSpider:
    def test_three_leg_layout(self):
        inst = gen_spider(3)
        assert inst.topo.n == 7
        assert inst.packets == (3, 1, 3, 1, 3, 1)
        st = NetworkState.initial(inst.topo, inst.packets)
        assert int(node_workloads(st, inst.topo).max()) == 4

    def test_single_leg(self):
        inst = gen_spider(1)
        assert inst.topo.n == 3
        assert inst.packets == (1, 1)
        st = NetworkState.initial(inst.topo, inst.packets)
        assert int(node_workloads(st, inst.topo).max()) == 2

    def test_hundred_leg_max_workload(self):
        inst = gen_spider(100)
        st = NetworkState.initial(inst.topo, inst.packets)
        assert int(node_workloads(st, inst.topo).max()) == 101

    def test_rejects_zero_legs(self):
        with pytest.raises(ValueError):
            gen_spider(0)

    def test_is_a_tree(self):
        inst = gen_spider(5)
        assert inst.topo.m == inst.topo.n - 1
        assert connected(inst.topo)
        assert is_bipartite(inst.topo)[0]


class TestTriangularMesh:
    def test_counts_and_determinism(self):
        a = gen_triangular_mesh(30, seed=11)
        b = gen_triangular_mesh(30, seed=11)
        assert a.n == 30
        assert 60 <= a.m <= 90
        assert a.links == b.links
        assert connected(a)

    def test_contains_a_triangle(self):
        topo = gen_triangular_mesh(30, seed=11)
        adj = np.zeros((topo.n, topo.n), dtype=bool)
        for u, v in topo.links:
            adj[u, v] = adj[v, u] = True
        assert any(
            (adj[u] & adj[v]).any() for u, v in topo.links
        )

    def test_minimal_mesh_is_triangle(self):
        topo = gen_triangular_mesh(3, seed=0)
        assert topo.n == 3
        assert topo.m == 3

    def test_rejects_too_few_nodes(self):
        with pytest.raises(ValueError):
            gen_triangular_mesh(2, seed=0)


class TestRandomConnected:
    def test_hundred_node_counts(self):
        topo = gen_random_connected(100, 248, seed=1)
        assert topo.n == 100
        assert topo.m == 248
        assert connected(topo)

    def test_tree_when_m_equals_n_minus_1(self):
        topo = gen_random_connected(5, 4, seed=3)
        assert topo.m == 4
        assert connected(topo)

    def test_infeasible_m_rejected(self):
        with pytest.raises(ValueError):
            gen_random_connected(4, 7, seed=0)
        with pytest.raises(ValueError):
            gen_random_connected(4, 2, seed=0)

    def test_deterministic(self):
        assert gen_random_connected(20, 40, 9).links == gen_random_connected(20, 40, 9).links


class TestRegularMultigraph:
    def test_uniform_workloads(self):
        inst = gen_regular_multigraph(50, 20, seed=2)
        st = NetworkState.initial(inst.topo, inst.packets)
        w = node_workloads(st, inst.topo)
        assert w.tolist() == [20] * 50

    def test_two_nodes_forced_multiplicity(self):
        inst = gen_regular_multigraph(2, 4, seed=0)
        assert inst.topo.links == ((0, 1),)
        assert inst.packets == (4,)

    def test_odd_product_rejected(self):
        with pytest.raises(ValueError, match="parity"):
            gen_regular_multigraph(3, 3, seed=0)

    def test_deterministic(self):
        a = gen_regular_multigraph(10, 4, seed=5)
        b = gen_regular_multigraph(10, 4, seed=5)
        assert a.topo.links == b.topo.links and a.packets == b.packets

    def test_dense_degree_near_node_count(self):
        inst = gen_regular_multigraph(6, 5, seed=8)
        st = NetworkState.initial(inst.topo, inst.packets)
        assert node_workloads(st, inst.topo).tolist() == [5] * 6


class TestAssignRandomMultiplicities:
    def test_zero_cap_gives_empty_instance(self):
        inst = assign_random_multiplicities(gen_grid(2, 2), 0, seed=1)
        assert inst.total_packets == 0

    def test_range_and_determinism(self):
        topo = gen_random_connected(100, 248, seed=4)
        a = assign_random_multiplicities(topo, 50, seed=7)
        b = assign_random_multiplicities(topo, 50, seed=7)
        assert a.packets == b.packets
        assert max(a.packets) <= 50
        assert min(a.packets) >= 0

    def test_negative_cap_rejected(self):
        with pytest.raises(ValueError):
            assign_random_multiplicities(gen_grid(2, 2), -1, seed=0)
