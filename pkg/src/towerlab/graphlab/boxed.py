"""Boxed wreath subgroups over disjoint unions of rigid units.

The layout for depth α is two bare unit slots followed by, for k = 2..α, a
complete binary pairing tree of depth k-1 whose leaves are unit slots::

    α = 3:   0   1   [2 3]   [[4 5] [6 7]]

The graph is just the disjoint union of the units placed in the slots; boxes
live only in the subgroup W, which is generated by one involution per box
whose two halves carry the same class sequence (the involution swaps the
halves leaf by leaf).  Because units are rigid and units in different classes
are non-isomorphic, Aut(Γ) acts on slots as the product of the symmetric
groups on the classes, which is the ambient used for normalizer towers.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import cached_property
from typing import Optional, Sequence, Union

from .. import config
from ..errors import GraphError
from ..normtower import NormalizerTower, perm_normalizer_tower
from .graph import ColoredGraph, disjoint_union
from .perm import PermGroup, SlotAmbient
from .refine import find_graph_isomorphism, graph_automorphism_group, is_rigid
from .units import unit_count, unit_graph

__all__ = [
    "BoxTree",
    "IsoAssignment",
    "BoxedBuild",
    "assignment_from_pattern",
    "build_boxed",
    "build_wall",
    "boxed_tower_height",
    "boxed_report",
]

Node = Union[int, tuple]

# Largest graph on which the slot action is checked against graph automorphisms.
SOUNDNESS_VERTEX_LIMIT = 24


def _complete_tree(depth: int, start: int) -> tuple[Node, int]:
    if depth == 0:
        return start, start + 1
    left, nxt = _complete_tree(depth - 1, start)
    right, nxt = _complete_tree(depth - 1, nxt)
    return (left, right), nxt


def _leaves(node: Node) -> list[int]:
    if isinstance(node, int):
        return [node]
    return _leaves(node[0]) + _leaves(node[1])


def _boxes(node: Node) -> list[tuple[list[int], list[int]]]:
    if isinstance(node, int):
        return []
    return [(_leaves(node[0]), _leaves(node[1]))] + _boxes(node[0]) + _boxes(node[1])


@dataclass(frozen=True)
class BoxTree:
    depth: int
    components: tuple[Node, ...]

    @classmethod
    def of_depth(cls, depth: int) -> "BoxTree":
        if depth < 1:
            raise GraphError("box depth must be at least 1")
        comps: list[Node] = [0, 1]
        nxt = 2
        for k in range(2, depth + 1):
            node, nxt = _complete_tree(k - 1, nxt)
            comps.append(node)
        return cls(depth, tuple(comps))

    @property
    def slot_count(self) -> int:
        return sum(len(_leaves(c)) for c in self.components)

    def component_slots(self) -> list[list[int]]:
        return [_leaves(c) for c in self.components]

    def boxes(self) -> list[tuple[list[int], list[int]]]:
        return [b for c in self.components for b in _boxes(c)]


@dataclass(frozen=True)
class IsoAssignment:
    """Slot classes plus the rigid unit graph bound to each class."""

    slot_classes: tuple[int, ...]
    units: tuple[ColoredGraph, ...] = field(compare=False)

    @classmethod
    def create(cls, slot_classes: Sequence[int], units: Optional[Sequence[ColoredGraph]] = None) -> "IsoAssignment":
        classes = tuple(int(c) for c in slot_classes)
        k = max(classes) + 1 if classes else 0
        if sorted(set(classes)) != list(range(k)):
            raise GraphError("slot classes must be dense from 0")
        if units is None:
            if k > unit_count():
                raise GraphError(f"{k} classes requested but only {unit_count()} shipped units")
            units = [unit_graph(i) for i in range(k)]
        units = tuple(units)
        if len(units) != k:
            raise GraphError(f"{len(units)} units for {k} classes")
        for i, u in enumerate(units):
            if not is_rigid(u):
                raise GraphError(f"unit for class {i} is not rigid")
        for i, j in itertools.combinations(range(k), 2):
            if find_graph_isomorphism(units[i], units[j]) is not None:
                raise GraphError(f"units for classes {i} and {j} are isomorphic")
        return cls(classes, units)

    @property
    def class_count(self) -> int:
        return len(self.units)

    def partition(self) -> list[list[int]]:
        out = [[] for _ in range(self.class_count)]
        for s, c in enumerate(self.slot_classes):
            out[c].append(s)
        return out


_UPTO = re.compile(r"^upto:(\d+)$")


def assignment_from_pattern(tree: BoxTree, pattern: str) -> IsoAssignment:
    """Slot classes from a named pattern.

    ``all-one``        every slot in one class
    ``per-component``  one class per component
    ``per-slot``       every slot its own class
    ``upto:B``         components 0..B share a class, later components get their own
    """
    comps = tree.component_slots()
    n = tree.slot_count
    if pattern == "all-one":
        classes = [0] * n
    elif pattern == "per-component":
        classes = [0] * n
        for i, c in enumerate(comps):
            for s in c:
                classes[s] = i
    elif pattern == "per-slot":
        classes = list(range(n))
    else:
        m = _UPTO.match(pattern)
        if not m:
            raise GraphError(f"unknown class pattern {pattern!r}")
        beta = int(m.group(1))
        if beta > tree.depth:
            raise GraphError(f"upto:{beta} exceeds the depth {tree.depth}")
        classes = [0] * n
        for i, c in enumerate(comps):
            for s in c:
                classes[s] = max(0, i - beta)
    return IsoAssignment.create(classes)


@dataclass(frozen=True, eq=False)
class BoxedBuild:
    tree: BoxTree
    assignment: IsoAssignment
    graph: ColoredGraph
    slot_vertices: tuple[range, ...]
    ambient: SlotAmbient
    W: PermGroup
    wall_slots: tuple[int, ...] = ()

    @property
    def slot_count(self) -> int:
        return len(self.slot_vertices)

    @cached_property
    def tower(self) -> NormalizerTower:
        return perm_normalizer_tower(self.ambient, self.W)


def _swap(degree: int, left: Sequence[int], right: Sequence[int]) -> tuple[int, ...]:
    p = list(range(degree))
    for a, b in zip(left, right):
        p[a], p[b] = b, a
    return tuple(p)


def _assemble(tree: BoxTree, assign: IsoAssignment, components: Sequence[Node], slot_classes: Sequence[int],
              units: Sequence[ColoredGraph], wall_slots: Sequence[int], verify: bool) -> BoxedBuild:
    n = len(slot_classes)
    graph, blocks = disjoint_union([units[c] for c in slot_classes])
    ambient = SlotAmbient(slot_classes)
    gens = []
    for comp in components:
        for left, right in _boxes(comp):
            if [slot_classes[s] for s in left] == [slot_classes[s] for s in right]:
                gens.append(_swap(n, left, right))
    W = PermGroup.generated(n, gens)
    build = BoxedBuild(tree, assign, graph, tuple(blocks), ambient, W, tuple(wall_slots))
    if verify and graph.vertex_count <= SOUNDNESS_VERTEX_LIMIT and ambient.order <= config.max_aut_order():
        _check_slot_action(build)
    return build


def slot_action(build: BoxedBuild, perm: Sequence[int]) -> tuple[int, ...]:
    """The slot permutation induced by a vertex automorphism of the boxed graph."""
    owner = {}
    for s, blk in enumerate(build.slot_vertices):
        for v in blk:
            owner[v] = s
    return tuple(owner[perm[blk[0]]] if len(blk) else s for s, blk in enumerate(build.slot_vertices))


def _check_slot_action(build: BoxedBuild) -> None:
    aut = graph_automorphism_group(build.graph)
    images = {slot_action(build, p) for p in aut.perms.tolist()}
    if len(images) != aut.order:
        raise AssertionError("graph automorphisms do not act faithfully on slots")
    amb = build.ambient.as_group()
    if images != amb._keys:
        raise AssertionError("slot action of Aut(Γ) differs from the ambient slot group")


def build_boxed(tree: BoxTree, assign: IsoAssignment, verify: bool = True) -> BoxedBuild:
    if len(assign.slot_classes) != tree.slot_count:
        raise GraphError(f"assignment covers {len(assign.slot_classes)} slots, tree has {tree.slot_count}")
    return _assemble(tree, assign, tree.components, assign.slot_classes, assign.units, (), verify)


WALL_ROWS = 2
WALL_LEVEL = 2


def build_wall(
    tree: BoxTree,
    assign: IsoAssignment,
    wall_class: Optional[int],
    rows: int = WALL_ROWS,
    level: int = WALL_LEVEL,
    verify: bool = True,
) -> BoxedBuild:
    """``build_boxed`` plus ``rows`` extra components, each a complete box tree of depth ``level``.

    The wall slots all get ``wall_class``: an existing class id makes the
    wall units isomorphic to that class, and ``assign.class_count`` adds a
    fresh unit.  ``None`` (or ``rows == 0``) is the empty wall.
    """
    if len(assign.slot_classes) != tree.slot_count:
        raise GraphError(f"assignment covers {len(assign.slot_classes)} slots, tree has {tree.slot_count}")
    if wall_class is None or rows == 0:
        return build_boxed(tree, assign, verify)
    if rows < 0 or level < 1:
        raise GraphError("wall needs rows >= 0 and level >= 1")
    k = assign.class_count
    if not 0 <= wall_class <= k:
        raise GraphError(f"wall class must be an existing class or {k} (a new one)")
    units = list(assign.units)
    if wall_class == k:
        if k >= unit_count():
            raise GraphError("no spare unit left for the wall class")
        fresh = IsoAssignment.create(list(range(k + 1)), units + [unit_graph(k)])
        units = list(fresh.units)
    comps = list(tree.components)
    start = tree.slot_count
    wall = []
    for _ in range(rows):
        node, nxt = _complete_tree(level, start)
        comps.append(node)
        wall.extend(range(start, nxt))
        start = nxt
    classes = list(assign.slot_classes) + [wall_class] * len(wall)
    return _assemble(tree, assign, comps, classes, units, wall, verify)


def boxed_tower_height(build: BoxedBuild) -> int:
    return build.tower.height


def boxed_report(build: BoxedBuild) -> dict:
    tower = build.tower
    classes = build.ambient.classes
    partition: dict[int, list[int]] = {}
    for s, c in enumerate(classes):
        partition.setdefault(c, []).append(s)
    return {
        "depth": build.tree.depth,
        "slot_count": build.slot_count,
        "wall_slots": len(build.wall_slots),
        "vertex_count": build.graph.vertex_count,
        "classes": [partition[c] for c in sorted(partition)],
        "ambient_order": build.ambient.order,
        "w_order": build.W.order,
        "stage_orders": tower.stage_orders,
        "height": tower.height,
    }
