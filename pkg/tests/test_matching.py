"""
Tests for bipartite matching and the chunked scan helpers.
"""

import networkx as nx
import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from pathdiv.core.matching import is_left_perfect, max_bipartite_matching
from pathdiv.core.parallel import all_hits, first_hit


def networkx_matching_size(graph):
    g = nx.Graph()
    left = [("L", u) for u in graph]
    g.add_nodes_from(left)
    for u, targets in graph.items():
        for v in targets:
            g.add_edge(("L", u), ("R", v))
    return len(nx.bipartite.maximum_matching(g, top_nodes=left)) // 2


def test_empty_graph():
    assert max_bipartite_matching({}) == {}


def test_complete_graph_is_perfect():
    k = 4
    graph = {i: list(range(1, k + 1)) for i in range(1, k + 1)}
    matching = max_bipartite_matching(graph)
    assert len(matching) == k
    assert is_left_perfect(graph, matching)


def test_augmenting_path_reroutes_earlier_choice():
    """Left 1 first grabs 2, then must move to 3 so left 2 can have 2."""
    graph = {1: [2, 3], 2: [2]}
    assert max_bipartite_matching(graph) == {1: 3, 2: 2}


def test_removed_color_still_matches():
    """Two colorings covering {2,3} after color 1 is taken away."""
    graph = {1: [1, 2, 3], 2: [1, 3]}
    restricted = {u: [v for v in vs if v != 1] for u, vs in graph.items()}
    matching = max_bipartite_matching(restricted)
    assert is_left_perfect(restricted, matching)
    assert set(matching.values()) == {2, 3}


def test_hall_violation_is_not_perfect():
    graph = {1: [1], 2: [1], 3: [2, 3]}
    matching = max_bipartite_matching(graph)
    assert len(matching) == 2
    assert not is_left_perfect(graph, matching)


graphs = st.dictionaries(
    st.integers(1, 5),
    st.lists(st.integers(1, 5), unique=True, max_size=5),
    max_size=5,
)


@settings(max_examples=300, suppress_health_check=[HealthCheck.function_scoped_fixture])
@given(graphs)
def test_matches_networkx_size(graph):
    matching = max_bipartite_matching(graph)
    assert len(matching) == networkx_matching_size(graph)
    assert len(set(matching.values())) == len(matching)
    assert all(v in graph[u] for u, v in matching.items())


def test_matching_is_deterministic():
    """Left vertices are tried in mapping order, so left 2 is the one left over."""
    graph = {3: [1, 2], 1: [2, 1], 2: [1]}
    assert max_bipartite_matching(graph) == max_bipartite_matching(dict(graph))
    assert list(max_bipartite_matching(graph)) == [3, 1]
    assert max_bipartite_matching(graph) == {3: 1, 1: 2}


def test_free_neighbor_is_taken_before_rerouting():
    """Identical rows match in order instead of bumping the earlier vertex."""
    assert max_bipartite_matching({1: [1, 2], 2: [1, 2]}) == {1: 1, 2: 2}
    assert max_bipartite_matching({1: [1, 2, 3], 2: [1, 2, 3], 3: [1, 2, 3]}) == {1: 1, 2: 2, 3: 3}
    assert max_bipartite_matching({1: [1, 2], 2: [1]}) == {1: 2, 2: 1}


@pytest.mark.parametrize("threads", [1, 2, 5])
@pytest.mark.parametrize("chunk_size", [1, 3, 100])
def test_first_hit_is_canonical(threads, chunk_size):
    items = list(range(50))
    hit, count = first_hit(
        items,
        lambda x: x * 10 if x % 7 == 6 else None,
        threads=threads,
        chunk_size=chunk_size,
    )
    assert hit == (6, 6, 60)
    assert count == 7


@pytest.mark.parametrize("threads", [1, 3])
def test_first_hit_miss_counts_everything(threads):
    hit, count = first_hit(range(20), lambda x: None, threads=threads, chunk_size=4)
    assert hit is None
    assert count == 20


def test_first_hit_reports_each_item_in_order():
    seen = []
    first_hit(range(10), lambda x: x if x == 4 else None, on_item=lambda i, x, r: seen.append((i, r)))
    assert seen == [(0, None), (1, None), (2, None), (3, None), (4, 4)]


@pytest.mark.parametrize("threads", [1, 4])
def test_all_hits_in_order(threads):
    hits, total = all_hits(range(30), lambda x: x if x % 4 == 0 else None, threads=threads, chunk_size=7)
    assert [h[0] for h in hits] == [0, 4, 8, 12, 16, 20, 24, 28]
    assert total == 30
