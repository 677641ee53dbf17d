import networkx as nx
import pytest

from enclaveless import families
from enclaveless.families import (
    FamilyError,
    FamilyFSpec,
    build_family_f,
    check_partition,
    enumerate_labeled_trees,
    family_f_members,
    format_family_spec,
    parse_corona_label,
    parse_family_spec,
    tree_from_prufer,
)
from enclaveless.graph import CapExceeded, GraphError, bits, degree_profile, is_claw_free, is_tree
from enclaveless.invariants import compute_invariants, enumerate_max_irredundant
from enclaveless.game import game_value


def nxg(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


def test_basic_generators():
    assert families.path(5).edges() == [(0, 1), (1, 2), (2, 3), (3, 4)]
    s = families.star(4)
    assert s.degree(0) == 4 and s.n == 5
    assert degree_profile(families.cycle(7)) == (2, 2, True, 2)
    assert families.basic("complete", 4).size == 6
    with pytest.raises(GraphError):
        families.basic("wheel", 4)
    with pytest.raises(GraphError):
        families.cycle(2)


def test_double_star():
    assert nx.is_isomorphic(nxg(families.double_star(1)), nx.path_graph(4))
    d2 = families.double_star(2)
    assert d2.n == 6 and d2.degree(0) == d2.degree(1) == 3
    d3 = families.double_star(3)
    assert d3.n == 8
    assert game_value(d3, "enclaveless", "max") == game_value(d3, "enclaveless", "min") == 4


def test_corona_path():
    assert nx.is_isomorphic(nxg(families.corona_path(2)), nx.path_graph(4))
    c = families.corona_path(10)
    assert c.n == 20
    assert parse_corona_label(c.labels[0]) == ("x", 1, 0)
    assert parse_corona_label(c.labels[19]) == ("y", 10, 0)
    r = compute_invariants(families.corona_path(4))
    assert r.well_dominated and r.gamma == 4
    assert "/B" not in families.corona_path(4).labels[0]
    with pytest.raises(ValueError):
        parse_corona_label("z3")


@pytest.mark.parametrize("m, r", [(2, 4), (2, 3), (3, 4), (3, 3)])
def test_connector_ring_shape(m, r):
    g = families.connector_ring(m, r)
    assert g.n == m * (r + 1)
    assert degree_profile(g) == (r, r, True, r)
    hidden = [v for v in range(g.n) if g.labels[v].startswith("h")]
    assert len(hidden) == m * (r - 1)
    for i in range(1, m + 1):
        ids = g.label_index()
        x, y = ids[f"x{i}"], ids[f"y{i}"]
        assert not g.has_edge(x, y)
        nxt = ids[f"x{i % m + 1}"]
        assert g.has_edge(y, nxt)


def test_connector_ring_rejects():
    with pytest.raises(GraphError):
        families.connector_ring(1, 4)
    with pytest.raises(GraphError):
        families.connector_ring(2, 2)


def test_family_k2_is_p3():
    pg = build_family_f(FamilyFSpec.of([[(0, 1)]]))
    assert nx.is_isomorphic(nxg(pg.graph), nx.path_graph(3))
    assert all(pg.graph.degree(v) == 1 for v in bits(pg.B)) and pg.B.bit_count() == 2


def test_family_p3():
    pg = build_family_f(FamilyFSpec.of([[(0, 1), (1, 2)]]))
    assert pg.graph.n == 5 and pg.B.bit_count() == 3
    assert compute_invariants(pg.graph).IR == 3


def test_family_two_k2_glued():
    pg = build_family_f(FamilyFSpec.of([[(0, 1)], [(0, 1)]], [((0, 0), (1, 1))]))
    assert pg.graph.n == 5 and pg.B.bit_count() == 3
    check_partition(pg.graph, pg.A, pg.B)


def test_family_rejects_bad_specs():
    k2 = [(0, 1)]
    with pytest.raises(FamilyError):
        build_family_f(FamilyFSpec.of([k2, k2]))
    with pytest.raises(FamilyError):
        build_family_f(FamilyFSpec.of([k2, k2], [((0, 0), (0, 1))]))
    with pytest.raises(FamilyError):
        build_family_f(FamilyFSpec.of([k2, k2], [((0, 0), (1, 7))]))
    with pytest.raises(FamilyError):
        build_family_f(FamilyFSpec.of([[(0, 1), (1, 2), (2, 0)]]))
    with pytest.raises(FamilyError):
        build_family_f(FamilyFSpec.of([k2, k2, k2], [((0, 0), (1, 0)), ((1, 0), (2, 0))]))


def test_check_partition_flags_problems():
    g = families.path(3)
    with pytest.raises(FamilyError):
        check_partition(g, 0b101, 0b010)


def test_members_are_claw_free_and_extremal():
    members = list(family_f_members(4, 2))
    assert len(members) == 111
    for spec, pg in members:
        g = pg.graph
        assert g.n <= 13 and is_claw_free(g)
        assert enumerate_max_irredundant(g) == [pg.B]


def test_prufer_and_tree_counts():
    assert tree_from_prufer([]).edges() == [(0, 1)]
    assert sorted(tree_from_prufer([1]).edges()) == [(0, 1), (1, 2)]
    trees = list(enumerate_labeled_trees(4))
    assert len(trees) == 16 and all(is_tree(t) for t in trees)
    assert len({tuple(t.edges()) for t in enumerate_labeled_trees(5)}) == 125
    with pytest.raises(CapExceeded):
        next(enumerate_labeled_trees(7))
    with pytest.raises(GraphError):
        tree_from_prufer([5])


def test_spec_text_round_trip():
    text = "# two paths\n0-1 1-2\n0-1\n(0:2, 1:0)\n"
    spec = parse_family_spec(text)
    assert spec == FamilyFSpec.of([[(0, 1), (1, 2)], [(0, 1)]], [((0, 2), (1, 0))])
    assert parse_family_spec(format_family_spec(spec)) == spec
    with pytest.raises(FamilyError, match="line 1"):
        parse_family_spec("0-x\n")
    with pytest.raises(FamilyError, match="line 2"):
        parse_family_spec("0-1\n(0:1 1:0)\n")
