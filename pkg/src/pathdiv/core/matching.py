"""
Maximum cardinality bipartite matching by augmenting paths.

Graphs are adjacency mappings from left vertices to sequences of right
vertices, e.g. ``{1: [2, 3], 2: [3]}``. Iteration follows the mapping's
and each sequence's order, so results are deterministic.
"""

from collections.abc import Hashable, Mapping, Sequence
from typing import TypeVar

L = TypeVar("L", bound=Hashable)
R = TypeVar("R", bound=Hashable)


def max_bipartite_matching(graph: Mapping[L, Sequence[R]]) -> dict[L, R]:
    """
    Return a maximum matching as a mapping from matched left to right vertices.

    Kuhn's algorithm: for each left vertex in turn, look for an augmenting
    path by depth-first search. A vertex takes its first free neighbor when
    it has one and only re-routes already matched left vertices otherwise,
    so identical rows match in order: ``{1: [1, 2], 2: [1, 2]}`` gives
    ``{1: 1, 2: 2}``. Graphs here have at most a handful of vertices per side.
    """
    owner: dict[R, L] = {}

    def augment(u: L, seen: set[R]) -> bool:
        for v in graph[u]:
            if v not in owner and v not in seen:
                seen.add(v)
                owner[v] = u
                return True
        for v in graph[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in owner or augment(owner[v], seen):
                owner[v] = u
                return True
        return False

    for u in graph:
        augment(u, set())

    partner = {u: v for v, u in owner.items()}
    return {u: partner[u] for u in graph if u in partner}


def is_left_perfect(graph: Mapping[L, Sequence[R]], matching: Mapping[L, R]) -> bool:
    """True when every left vertex is matched along an edge of the graph."""
    return len(matching) == len(graph) and all(
        u in graph and v in graph[u] for u, v in matching.items()
    ) and len(set(matching.values())) == len(matching)
