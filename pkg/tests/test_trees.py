import random
from itertools import combinations

import networkx as nx
import pytest
from _support import complete

from bsgraph import trees
from bsgraph.graph import SubgraphView, build
from bsgraph.verify import check_trees, tree_vertices, verify_tree_set


def test_complete_m3():
    ts = trees.trees_complete(3, (0, 1, 2))
    assert ts.trees == [frozenset({(0, 1), (0, 2)})]


def test_complete_m5():
    ts = trees.trees_complete(5, (0, 1, 2))
    assert len(ts) == 3
    assert verify_tree_set(complete(5), ts).passed


def test_complete_all_triples_k6():
    for S in combinations(range(6), 3):
        ts = trees.trees_complete(6, S)
        assert len(ts) == 4 and verify_tree_set(complete(6), ts).passed


def test_complete_rejects_bad_input():
    with pytest.raises(ValueError):
        trees.trees_complete(2, (0, 1, 2))
    with pytest.raises(ValueError):
        trees.trees_complete(4, (0, 0, 1))


def test_steiner_connect_trivial(b42):
    assert trees.steiner_connect(b42, [5]) == frozenset()
    assert trees.steiner_connect(b42, [0, 3]) == frozenset({(0, 3)})


def test_steiner_connect_outside_neighbors_b52():
    g = build(5, 2)
    H = g.complement_view(1)
    targets = [g.outside(g.vertex(s)) for s in ("21", "31", "41")]
    edges = trees.steiner_connect(H, targets)
    assert len(edges) <= 8
    T = nx.Graph(list(edges))
    assert nx.is_tree(T) and set(targets) <= set(T)
    assert all(H.has_edge(u, v) for u, v in edges)


def test_steiner_connect_disconnected(b42):
    d = b42.decompose()
    view = SubgraphView(b42, d.blocks[1] | d.blocks[2] - {b42.vertex("12"), b42.vertex("21")})
    with pytest.raises(ValueError):
        trees.steiner_connect(view, [b42.vertex("31"), b42.vertex("32")])


def test_first_intersection():
    assert trees.first_intersection([1, 2, 3], {9}) == (3, [1, 2, 3])
    assert trees.first_intersection([1, 2, 3], {1, 3}) == (1, [])
    assert trees.first_intersection([1, 2, 3, 4], {3, 4}) == (3, [1, 2])


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_closed_neighborhood_exits(n):
    g = build(n, 2)
    v = g.vertex("12")
    exits = trees.closed_neighborhood_exits(g, v)
    assert sorted(exits) == [j for j in range(1, n + 1) if j != 2]
    outs = sorted(g.labels[g.outside(u)] for u in exits.values())
    assert outs == sorted([(2, 1)] + [(2, j) for j in range(3, n + 1)])
    assert len(set(exits.values())) == n - 1
    closed = {v} | {w for w in g.neighbors(v) if g.copy_of(w) == 2}
    assert set(exits.values()) == closed


def test_closed_neighborhood_exits_needs_k2(b53):
    with pytest.raises(ValueError):
        trees.closed_neighborhood_exits(b53, 0)


def labels(g, texts):
    return [g.vertex(t) for t in texts]


@pytest.mark.parametrize(
    "n,k,S,case",
    [
        (5, 2, ("12", "32", "42"), trees.K2_ONE),
        (5, 2, ("12", "32", "45"), trees.K2_TWO),
        (5, 2, ("12", "23", "34"), trees.K2_THREE),
        (5, 3, ("231", "321", "451"), trees.K3_ONE),
        (5, 3, ("231", "321", "452"), trees.K3_TWO),
        (5, 3, ("231", "132", "213"), None),
        (4, 3, ("231", "132", "213"), trees.BASE_SEARCH),
        (3, 2, ("12", "21", "13"), trees.BASE_SEARCH),
        (5, 1, ("1", "2", "3"), trees.COMPLETE),
    ],
)
def test_case_dispatch(n, k, S, case):
    g = build(n, k)
    ts = trees.trees3(g, labels(g, S))
    assert len(ts) == n - 2
    assert verify_tree_set(g, ts).passed
    if case is None:
        assert ts.case in (trees.K3_DIRECT, trees.K3_EXTENDED)
    else:
        assert ts.case == case
    assert not ts.fallback
    assert set(ts.tags) <= set(trees.CASE_TAGS)


def test_three_copy_k3_tags_and_vertex_sets(b53):
    rng = random.Random(2)
    seen = set()
    for _ in range(200):
        S = rng.sample(b53.vertices, 3)
        if len({b53.copy_of(v) for v in S}) != 3:
            continue
        ts = trees.trees3(b53, S)
        seen.add(ts.case)
        assert len(ts) == 3 and check_trees(b53, S, ts.trees).passed
        for a, b in combinations(ts.trees, 2):
            assert tree_vertices(a) & tree_vertices(b) == set(S)
    assert seen == {trees.K3_DIRECT, trees.K3_EXTENDED}


def test_to_dict_uses_labels(b42):
    ts = trees.trees3(b42, labels(b42, ("12", "21", "34")))
    doc = ts.to_dict(b42)
    assert doc["S"] == ["12", "21", "34"]
    assert list(doc) == ["S", "trees", "caseTags", "case", "fallback"]
    assert len(doc["trees"]) == 2


def test_invalid_S(b42):
    with pytest.raises(ValueError):
        trees.trees3(b42, [0, 0, 1])
    with pytest.raises(ValueError):
        trees.trees3(b42, [0, 1, 99])


@pytest.mark.parametrize("n,k", [(5, 2), (6, 2), (5, 3), (5, 4), (6, 3)])
def test_random_triples(n, k):
    g = build(n, k)
    rng = random.Random(n * 10 + k)
    for _ in range(60):
        S = rng.sample(g.vertices, 3)
        ts = trees.trees3(g, S)
        assert len(ts) == n - 2 and verify_tree_set(g, ts).passed and not ts.fallback
