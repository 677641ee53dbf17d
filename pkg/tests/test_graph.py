import math
import random

import networkx as nx
import pytest

from conftest import random_graph
from enclaveless import families
from enclaveless.graph import (
    CapExceeded,
    GraphError,
    bits,
    build_graph,
    clique_graph,
    closed_neighborhood,
    corona,
    degree_profile,
    distance,
    has_induced_star,
    is_claw_free,
    is_connected,
    is_isolate_free,
    is_simplicial,
    is_tree,
    line_graph,
    mask_of,
    maximal_cliques,
)


def to_nx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_closed_neighborhood_of_path_middle():
    assert set(bits(closed_neighborhood(families.path(3), 1))) == {0, 1, 2}


def test_closed_neighborhood_rejects_bad_vertex():
    with pytest.raises(GraphError):
        closed_neighborhood(families.path(3), 3)


@pytest.mark.parametrize("n, edges", [(0, []), (65, []), (3, [(0, 3)]), (3, [(1, 1)])])
def test_build_graph_rejects(n, edges):
    with pytest.raises(GraphError):
        build_graph(n, edges)


def test_duplicate_edges_collapse():
    g = build_graph(3, [(0, 1), (1, 0), (0, 1)])
    assert g.size == 1


def test_degree_profile():
    assert degree_profile(families.cycle(5)) == (2, 2, True, 2)
    assert degree_profile(families.star(3)) == (1, 3, False, None)


def test_star_detection():
    assert has_induced_star(families.star(3), 3)
    assert not has_induced_star(families.cycle(5), 3)
    assert is_claw_free(families.path(6))
    with pytest.raises(GraphError):
        has_induced_star(families.path(3), 1)


def test_line_graph_of_claw_is_triangle():
    lg, edge_map = line_graph(families.star(3))
    assert lg.n == 3 and lg.size == 3
    assert sorted(edge_map) == [(0, 1), (0, 2), (0, 3)]


def test_line_graph_of_edgeless_raises():
    with pytest.raises(GraphError):
        line_graph(build_graph(3, []))


def test_clique_graph_of_path_is_path():
    k = clique_graph(families.path(4))
    assert k.n == 3 and is_tree(k) and degree_profile(k)[1] == 2


def test_clique_cap():
    with pytest.raises(CapExceeded):
        maximal_cliques(families.cycle(8), cap=3)


def test_distance_and_connectivity():
    g = build_graph(4, [(0, 1), (1, 2)])
    assert distance(g, 0, 2) == 2
    assert distance(g, 0, 3) == math.inf
    assert not is_connected(g) and not is_isolate_free(g)


def test_corona_layout():
    c = corona(families.path(3))
    assert c.n == 6 and c.has_edge(0, 3) and c.has_edge(2, 5)
    assert c.labels[4] == "y1"


def test_simplicial():
    g = families.path(3)
    assert is_simplicial(g, 0) and not is_simplicial(g, 1)


def test_induced_subgraph():
    h = families.cycle(5).induced(mask_of([0, 1, 2]))
    assert h.n == 3 and h.size == 2


@pytest.mark.parametrize("seed", range(40))
def test_structure_agrees_with_networkx(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(1, 11), rng.random())
    h = to_nx(g)
    assert is_connected(g) == nx.is_connected(h)
    assert is_tree(g) == nx.is_tree(h)
    mine = sorted(sorted(bits(c)) for c in maximal_cliques(g))
    theirs = sorted(sorted(c) for c in nx.find_cliques(h))
    assert mine == theirs
    if g.size:
        lg, _ = line_graph(g)
        assert nx.is_isomorphic(to_nx(lg), nx.line_graph(h))
    claw = any(
        not h.has_edge(a, b) and not h.has_edge(a, c) and not h.has_edge(b, c)
        for v in h for a in h[v] for b in h[v] for c in h[v] if a < b < c
    )
    assert has_induced_star(g, 3) == claw
    for u in range(g.n):
        for v in range(g.n):
            want = nx.shortest_path_length(h, u, v) if nx.has_path(h, u, v) else math.inf
            assert distance(g, u, v) == want


def test_documented_small_cases():
    p3, p4, k3 = families.path(3), families.path(4), families.complete(3)
    assert set(bits(closed_neighborhood(p3, 0))) == {0, 1}
    assert degree_profile(families.path(2)) == (1, 1, True, 1)
    two_k2 = build_graph(4, [(0, 1), (2, 3)])
    assert is_isolate_free(two_k2) and not is_connected(two_k2) and not is_tree(two_k2)
    assert not is_isolate_free(build_graph(3, [(1, 2)]))
    assert is_tree(families.path(5))
    assert line_graph(p4)[0].edges() == [(0, 1), (1, 2)]
    assert line_graph(k3)[0].size == 3
    assert clique_graph(k3).n == 1
    assert clique_graph(p3).edges() == [(0, 1)]
    assert corona(build_graph(1, [])).edges() == [(0, 1)]
    assert nx.is_isomorphic(to_nx(corona(families.path(2))), nx.path_graph(4))
    net = corona(k3)
    assert sorted(net.edges()) == [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 5)]
    assert distance(p4, 0, 3) == 3 and distance(families.cycle(4), 0, 2) == 2
    assert distance(two_k2, 0, 2) == math.inf
    l_p3 = line_graph(corona(families.path(2)))[0]
    assert nx.is_isomorphic(to_nx(l_p3), nx.path_graph(3))
    ends = [v for v in range(3) if l_p3.degree(v) == 1]
    assert all(is_simplicial(l_p3, v) for v in ends)


@pytest.mark.parametrize("seed", range(20))
def test_line_graphs_are_claw_free(seed):
    rng = random.Random(seed)
    g = random_graph(rng, rng.randint(2, 9))
    if g.size:
        assert is_claw_free(line_graph(g)[0])
