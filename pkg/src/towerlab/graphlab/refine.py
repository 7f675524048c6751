"""Graph automorphisms and isomorphisms by color refinement plus individualization.

Refinement repeatedly replaces each vertex color by the pair (color, sorted
neighbor colors) and renumbers the pairs in sorted order, so the result is
canonical: isomorphic inputs refine to colorings that correspond under every
isomorphism.  The search individualizes one vertex of the first non-singleton
cell at a time.  A reference leaf is fixed along the leftmost path, and every
other branch is followed only while its refinement trace matches the
reference, so each leaf reached gives a candidate map that is then verified.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .. import config
from ..errors import OrderCapExceeded
from ..groups import FiniteGroup
from ..named import group_from_permutations
from .graph import ColoredGraph

__all__ = ["GraphAutGroup", "refine", "graph_automorphism_group", "is_rigid", "find_graph_isomorphism"]


def refine(adj: Sequence[Sequence[int]], colors: Sequence[int]) -> tuple[list[int], tuple]:
    """Stable canonical coloring and the trace of signature tables it went through."""
    cols = list(colors)
    ncls = len(set(cols))
    trace = []
    while True:
        sigs = [(cols[v], tuple(sorted(cols[u] for u in adj[v]))) for v in range(len(cols))]
        distinct = sorted(set(sigs))
        idx = {s: i for i, s in enumerate(distinct)}
        cols = [idx[s] for s in sigs]
        counts = np.bincount(cols, minlength=len(distinct)).tolist() if cols else []
        trace.append((tuple(distinct), tuple(counts)))
        if len(distinct) == ncls:
            return cols, tuple(trace)
        ncls = len(distinct)


def _target_cell(cols: list[int]) -> Optional[list[int]]:
    counts = np.bincount(cols)
    big = np.flatnonzero(counts > 1)
    if len(big) == 0:
        return None
    c = int(big[0])
    return [v for v, x in enumerate(cols) if x == c]


def _individualize(adj, cols: list[int], v: int) -> tuple[list[int], tuple]:
    tmp = list(cols)
    tmp[v] = -1
    return refine(adj, tmp)


class _Leaves:
    """Leaves of ``target`` whose traces match the reference path of ``source``."""

    def __init__(self, source: ColoredGraph, target: ColoredGraph):
        self.src, self.dst = source, target
        self.ref_traces: list[tuple] = []
        cols, tr = refine(source.adjacency, source.colors)
        self.ref_traces.append(tr)
        while True:
            cell = _target_cell(cols)
            if cell is None:
                break
            cols, tr = _individualize(source.adjacency, cols, cell[0])
            self.ref_traces.append(tr)
        self.ref_labels = cols  # discrete

    def walk(self):
        adj = self.dst.adjacency
        cols, tr = refine(adj, self.dst.colors)
        if tr != self.ref_traces[0]:
            return
        yield from self._walk(adj, cols, 1)

    def _walk(self, adj, cols, depth):
        cell = _target_cell(cols)
        if cell is None:
            if depth != len(self.ref_traces):
                return
            pos = {c: u for u, c in enumerate(cols)}
            yield [pos[c] for c in self.ref_labels]
            return
        if depth >= len(self.ref_traces):
            return
        for v in cell:
            child, tr = _individualize(adj, cols, v)
            if tr == self.ref_traces[depth]:
                yield from self._walk(adj, child, depth + 1)


def _check_size(g: ColoredGraph, max_vertices: int) -> None:
    if g.vertex_count > max_vertices:
        raise OrderCapExceeded(f"graph has {g.vertex_count} vertices, cap is {max_vertices}")


@dataclass(frozen=True, eq=False)
class GraphAutGroup:
    """Aut(Γ): ``group`` is numbered like ``perms`` (lexicographic, identity first)."""

    group: FiniteGroup
    perms: np.ndarray  # perms[i][v] = image of vertex v under element i

    @property
    def order(self) -> int:
        return self.group.order


def graph_automorphism_group(
    g: ColoredGraph,
    max_order: Optional[int] = None,
    max_vertices: int = config.MAX_GRAPH_VERTICES,
) -> GraphAutGroup:
    _check_size(g, max_vertices)
    cap = config.max_aut_order() if max_order is None else max_order
    found = {}
    for perm in _Leaves(g, g).walk():
        key = tuple(perm)
        if key in found or not g.is_automorphism(perm):
            continue
        found[key] = None
        if len(found) > cap:
            raise OrderCapExceeded(f"graph automorphism group has more than {cap} elements")
    if not found:
        found[tuple(range(g.vertex_count))] = None  # empty graph
    perms = sorted(found)
    group = group_from_permutations(perms) if g.vertex_count else FiniteGroup.trusted([[0]])
    arr = np.asarray(perms, dtype=np.int64).reshape(len(perms), g.vertex_count)
    arr.setflags(write=False)
    return GraphAutGroup(group, arr)


def is_rigid(g: ColoredGraph, max_vertices: int = config.MAX_GRAPH_VERTICES) -> bool:
    _check_size(g, max_vertices)
    ident = list(range(g.vertex_count))
    for perm in _Leaves(g, g).walk():
        if perm != ident and g.is_automorphism(perm):
            return False
    return True


def find_graph_isomorphism(a: ColoredGraph, b: ColoredGraph, max_vertices: int = config.MAX_GRAPH_VERTICES) -> Optional[list[int]]:
    """A vertex map a -> b preserving colors and edges, or ``None``."""
    _check_size(a, max_vertices)
    _check_size(b, max_vertices)
    if a.vertex_count != b.vertex_count or len(a.edges) != len(b.edges):
        return None
    if sorted(a.colors) != sorted(b.colors):
        return None
    for perm in _Leaves(a, b).walk():
        if a.maps_to(b, perm):
            return perm
    return None


