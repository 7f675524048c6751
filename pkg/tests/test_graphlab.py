import itertools
import json

import pytest

from towerlab.errors import GraphError, OrderCapExceeded
from towerlab.graphlab import (
    ColoredGraph,
    disjoint_union,
    find_graph_isomorphism,
    graph_automorphism_group,
    graph_from_json,
    graph_to_json,
    is_rigid,
    load_graph,
)
from towerlab.graphlab.units import unit_count, unit_graph
from towerlab.search import find_isomorphism
from towerlab.named import group_from_permutations

import oracles


def test_examples():
    assert graph_automorphism_group(ColoredGraph.make(3)).order == 6
    assert graph_automorphism_group(ColoredGraph.make(3, [(0, 1), (1, 2)])).order == 2
    assert graph_automorphism_group(ColoredGraph.make(4, [(0, 1), (1, 2), (2, 3)], [0, 1, 2, 3])).order == 1


def test_rigidity_examples():
    assert is_rigid(unit_graph(0))
    assert oracles.graph_automorphisms(6, unit_graph(0).edges) == [tuple(range(6))]
    assert is_rigid(ColoredGraph.make(1))
    assert not is_rigid(ColoredGraph.make(2))


def test_validation():
    with pytest.raises(GraphError):
        ColoredGraph.make(2, [(0, 0)])
    with pytest.raises(GraphError):
        ColoredGraph.make(2, [(0, 2)])
    with pytest.raises(GraphError):
        ColoredGraph.make(2, [], [0, 2])
    with pytest.raises(OrderCapExceeded):
        graph_automorphism_group(ColoredGraph.make(70))


def test_order_cap():
    with pytest.raises(OrderCapExceeded):
        graph_automorphism_group(ColoredGraph.make(7))  # 5040 > 512


def test_shipped_units_rigid_and_distinct():
    units = [unit_graph(i) for i in range(unit_count())]
    for u in units:
        assert is_rigid(u)
        assert 6 <= u.vertex_count <= 8
    for a, b in itertools.combinations(units, 2):
        assert find_graph_isomorphism(a, b) is None


def test_corpus_against_brute_force(graph_files):
    assert len(graph_files) >= 20
    for path in graph_files:
        g = load_graph(path)
        assert g.vertex_count <= 7
        brute = oracles.graph_automorphisms(g.vertex_count, g.edges, g.colors)
        mine = graph_automorphism_group(g, max_order=10_000)
        assert [tuple(p) for p in mine.perms.tolist()] == brute, path.name


def test_abstract_group_matches_perms():
    g = ColoredGraph.make(6, [(i, (i + 1) % 6) for i in range(6)])
    A = graph_automorphism_group(g)
    assert A.order == 12
    assert find_isomorphism(A.group, group_from_permutations(A.perms.tolist())) is not None
    t = A.group.table
    P = A.perms
    for i in range(12):
        for j in range(12):
            assert (P[t[i, j]] == P[i][P[j]]).all()


def test_isomorphism_of_relabelled_graph():
    g = unit_graph(5)
    perm = [3, 6, 0, 5, 1, 4, 2]
    h = ColoredGraph.make(7, [(perm[u], perm[v]) for u, v in g.edges])
    iso = find_graph_isomorphism(g, h)
    assert iso is not None and g.maps_to(h, iso)


def test_json_round_trip(tmp_path):
    g = ColoredGraph.make(4, [(0, 1), (2, 3)], [0, 0, 1, 1])
    text = json.dumps(graph_to_json(g))
    assert graph_from_json(json.loads(text)) == g
    path = tmp_path / "g.json"
    path.write_text(text)
    assert load_graph(path) == g
    with pytest.raises(GraphError):
        load_graph(tmp_path / "missing.json")


def test_disjoint_union_blocks():
    u, blocks = disjoint_union([unit_graph(0), unit_graph(1)])
    assert u.vertex_count == 12 and [len(b) for b in blocks] == [6, 6]
    assert graph_automorphism_group(u).order == 1
    v, _ = disjoint_union([unit_graph(0)] * 3)
    assert graph_automorphism_group(v).order == 6
