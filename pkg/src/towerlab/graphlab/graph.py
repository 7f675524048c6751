"""Vertex-colored simple graphs."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import Iterable, Sequence

from ..errors import GraphError

__all__ = ["ColoredGraph", "graph_from_json", "graph_to_json", "load_graph", "disjoint_union"]


@dataclass(frozen=True)
class ColoredGraph:
    vertex_count: int
    colors: tuple[int, ...]
    edges: frozenset  # of (u, v) with u < v

    @classmethod
    def make(cls, n: int, edges: Iterable[Sequence[int]] = (), colors: Sequence[int] | None = None) -> "ColoredGraph":
        if n < 0:
            raise GraphError("vertex count must be nonnegative")
        cols = tuple(int(c) for c in colors) if colors is not None else (0,) * n
        if len(cols) != n:
            raise GraphError(f"{len(cols)} colors given for {n} vertices")
        if cols and sorted(set(cols)) != list(range(max(cols) + 1)):
            raise GraphError("color ids must be dense from 0")
        es = set()
        for e in edges:
            if len(e) != 2:
                raise GraphError(f"edge {list(e)} is not a pair")
            u, v = int(e[0]), int(e[1])
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            es.add((min(u, v), max(u, v)))
        return cls(n, cols, frozenset(es))

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        nb = [[] for _ in range(self.vertex_count)]
        for u, v in self.edges:
            nb[u].append(v)
            nb[v].append(u)
        return tuple(tuple(sorted(x)) for x in nb)

    def is_automorphism(self, perm: Sequence[int]) -> bool:
        return self.maps_to(self, perm)

    def maps_to(self, other: "ColoredGraph", perm: Sequence[int]) -> bool:
        """Whether ``perm`` (vertex v -> perm[v]) is an isomorphism onto ``other``."""
        if self.vertex_count != other.vertex_count or len(self.edges) != len(other.edges):
            return False
        if any(self.colors[v] != other.colors[perm[v]] for v in range(self.vertex_count)):
            return False
        return all((min(perm[u], perm[v]), max(perm[u], perm[v])) in other.edges for u, v in self.edges)


def disjoint_union(parts: Sequence[ColoredGraph]) -> tuple[ColoredGraph, list[range]]:
    """Union of the parts with vertices renumbered consecutively; returns the blocks too."""
    edges, colors, blocks = [], [], []
    off = 0
    for g in parts:
        blocks.append(range(off, off + g.vertex_count))
        colors.extend(g.colors)
        edges.extend((u + off, v + off) for u, v in g.edges)
        off += g.vertex_count
    used = sorted(set(colors))
    remap = {c: i for i, c in enumerate(used)}
    return ColoredGraph.make(off, edges, [remap[c] for c in colors]), blocks


def graph_to_json(g: ColoredGraph) -> dict:
    return {"vertices": g.vertex_count, "colors": list(g.colors), "edges": [list(e) for e in sorted(g.edges)]}


def graph_from_json(data: dict) -> ColoredGraph:
    try:
        n = int(data["vertices"])
        edges = data.get("edges", [])
        colors = data.get("colors")
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from None
    return ColoredGraph.make(n, edges, colors)


def load_graph(path) -> ColoredGraph:
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise GraphError(f"cannot read graph file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise GraphError(f"graph file {path} is not valid JSON: {exc.msg}") from None
    if not isinstance(data, dict):
        raise GraphError("graph JSON must be an object")
    return graph_from_json(data)
