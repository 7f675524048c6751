import pytest

from towerlab.errors import GraphError
from towerlab.graphlab import BoxTree, IsoAssignment, assignment_from_pattern, boxed_report, boxed_tower_height, build_boxed, build_wall
from towerlab.graphlab.graph import ColoredGraph
from towerlab.graphlab.units import unit_graph


def _build(depth, pattern):
    tree = BoxTree.of_depth(depth)
    return build_boxed(tree, assignment_from_pattern(tree, pattern))


def test_tree_layout():
    t = BoxTree.of_depth(3)
    assert t.slot_count == 8
    assert t.components == (0, 1, (2, 3), ((4, 5), (6, 7)))
    assert [BoxTree.of_depth(a).slot_count for a in (1, 2, 3, 4)] == [2, 4, 8, 16]
    with pytest.raises(GraphError):
        BoxTree.of_depth(0)


def test_build_examples():
    b = _build(2, "all-one")
    assert b.ambient.order == 24 and b.W.order == 2
    b = _build(2, "per-slot")
    assert b.ambient.order == 1 and b.W.order == 1
    b = _build(3, "all-one")
    assert b.ambient.order == 40320 and b.W.order == 16


def test_graph_is_plain_union():
    b = _build(2, "all-one")
    assert b.graph.vertex_count == 4 * unit_graph(0).vertex_count
    assert len(b.graph.edges) == 4 * len(unit_graph(0).edges)


@pytest.mark.parametrize("depth,pattern", [(1, "all-one"), (2, "all-one"), (2, "per-component"), (2, "upto:1"), (3, "per-component"), (3, "upto:1")])
def test_slot_action_soundness(depth, pattern):
    # build_boxed checks the slot action against graph automorphisms on small instances;
    # re-run the check explicitly so the test fails loudly if it is skipped
    from towerlab.graphlab.boxed import _check_slot_action, SOUNDNESS_VERTEX_LIMIT
    b = _build(depth, pattern)
    if b.graph.vertex_count <= SOUNDNESS_VERTEX_LIMIT:
        _check_slot_action(b)


def test_heights_all_one():
    assert [boxed_tower_height(_build(a, "all-one")) for a in (1, 2, 3)] == [1, 2, 3]


@pytest.mark.parametrize("depth,beta", [(2, 0), (2, 1), (3, 0), (3, 1), (3, 2)])
def test_heights_truncated(depth, beta):
    assert boxed_tower_height(_build(depth, f"upto:{beta}")) == beta


def test_tower_stage_orders_alpha3():
    b = _build(3, "all-one")
    assert b.tower.stage_orders == [16, 32, 64, 128]


def test_assignment_gate():
    with pytest.raises(GraphError, match="not rigid"):
        IsoAssignment.create([0, 0], [ColoredGraph.make(2)])
    with pytest.raises(GraphError, match="isomorphic"):
        IsoAssignment.create([0, 1], [unit_graph(0), unit_graph(0)])
    with pytest.raises(GraphError):
        build_boxed(BoxTree.of_depth(2), IsoAssignment.create([0, 0]))
    with pytest.raises(GraphError):
        assignment_from_pattern(BoxTree.of_depth(2), "upto:5")
    with pytest.raises(GraphError):
        assignment_from_pattern(BoxTree.of_depth(2), "zigzag")


def test_empty_wall_is_identity():
    tree = BoxTree.of_depth(2)
    assign = assignment_from_pattern(tree, "all-one")
    a = boxed_report(build_boxed(tree, assign))
    b = boxed_report(build_wall(tree, assign, None))
    c = boxed_report(build_wall(tree, assign, 0, rows=0))
    assert a == b == c


def test_distinct_wall_keeps_height_alpha2():
    tree = BoxTree.of_depth(2)
    assign = assignment_from_pattern(tree, "all-one")
    plain = boxed_tower_height(build_boxed(tree, assign))
    walled = build_wall(tree, assign, assign.class_count)
    assert walled.slot_count == 12 and len(walled.wall_slots) == 8
    assert boxed_tower_height(walled) == plain


def test_wall_class_validation():
    tree = BoxTree.of_depth(1)
    assign = assignment_from_pattern(tree, "all-one")
    with pytest.raises(GraphError):
        build_wall(tree, assign, 5)
