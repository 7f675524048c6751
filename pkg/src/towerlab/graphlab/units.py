"""Shipped rigid unit graphs.

Every entry is a connected graph with trivial automorphism group (checked by
the test suite and again whenever an assignment is built).  Index 0 is the
default unit.  Entries of equal size were chosen pairwise non-isomorphic.
"""

from __future__ import annotations

from .graph import ColoredGraph

__all__ = ["UNIT_EDGES", "unit_graph", "unit_count"]

UNIT_EDGES: tuple[tuple[int, tuple[tuple[int, int], ...]], ...] = (
    (6, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (3, 5))),
    (6, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (2, 5))),
    (6, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 5), (3, 5))),
    (6, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (3, 4), (3, 5))),
    (7, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (2, 4), (3, 5), (5, 6))),
    (7, ((0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (4, 6))),
    (7, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (2, 5), (5, 6))),
    (7, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 5), (3, 6), (5, 6))),
    (7, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 5), (2, 6), (3, 4), (3, 5))),
    (7, ((0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (1, 6), (2, 4))),
    (7, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 5), (2, 6), (3, 5))),
    (7, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (3, 5), (5, 6))),
    (7, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (2, 5), (4, 6), (5, 6))),
    (7, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 5), (3, 6))),
    (7, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 5), (3, 5), (3, 6), (4, 5))),
    (7, ((0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 5), (3, 4), (3, 6), (5, 6))),
    (7, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 5), (3, 5), (4, 6))),
    (7, ((0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (2, 5), (4, 5), (5, 6))),
)


def unit_count() -> int:
    return len(UNIT_EDGES)


def unit_graph(i: int) -> ColoredGraph:
    n, edges = UNIT_EDGES[i]
    return ColoredGraph.make(n, edges)
