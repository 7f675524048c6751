"""Colored graphs, rigid units and the boxed wreath construction."""

from .boxed import (
    BoxedBuild,
    BoxTree,
    IsoAssignment,
    assignment_from_pattern,
    boxed_report,
    boxed_tower_height,
    build_boxed,
    build_wall,
)
from .graph import ColoredGraph, disjoint_union, graph_from_json, graph_to_json, load_graph
from .perm import PermGroup, SlotAmbient
from .refine import GraphAutGroup, find_graph_isomorphism, graph_automorphism_group, is_rigid

__all__ = [
    "BoxedBuild",
    "BoxTree",
    "ColoredGraph",
    "GraphAutGroup",
    "IsoAssignment",
    "PermGroup",
    "SlotAmbient",
    "assignment_from_pattern",
    "boxed_report",
    "boxed_tower_height",
    "build_boxed",
    "build_wall",
    "disjoint_union",
    "find_graph_isomorphism",
    "graph_automorphism_group",
    "graph_from_json",
    "graph_to_json",
    "is_rigid",
    "load_graph",
]
