import random
from itertools import combinations

import networkx as nx
import pytest

from bsgraph import _flow_py, flow, graph
from bsgraph.flow import InsufficientPaths, PathFamily
from bsgraph.graph import build
from bsgraph.perm import outside_neighbor
from bsgraph.verify import min_separator_bruteforce

try:
    from bsgraph import _flow_ext
except ImportError:  # extension not built
    _flow_ext = None


def v(g, text):
    return g.vertex(text)


def test_adjacent_pair_b42(b42):
    fam = flow.max_disjoint_paths(b42, v(b42, "12"), v(b42, "21"))
    assert isinstance(fam, PathFamily) and len(fam) == 3
    assert (v(b42, "12"), v(b42, "21")) in fam.paths


def test_cycle_pairs_give_two_paths():
    g = build(3, 2)
    for a, b in combinations(g.vertices, 2):
        assert flow.local_connectivity(g, a, b) == 2


def test_same_endpoint_rejected(b42):
    with pytest.raises(ValueError):
        flow.max_disjoint_paths(b42, 0, 0)


def small_views():
    """Graphs of at most 12 vertices: B_{3,2}, B_{4,2}, and induced pieces."""
    g32, g42 = build(3, 2), build(4, 2)
    yield g32
    yield g42
    yield g42.complement_view(1)
    d = g42.decompose()
    yield graph.SubgraphView(g42, d.blocks[1] | d.blocks[2])
    yield graph.SubgraphView(g42, set(g42.vertices) - {0, 5, 7})


@pytest.mark.parametrize("idx", range(5))
def test_menger_matches_bruteforce_separator(idx):
    g = list(small_views())[idx]
    assert len(g.vertices) <= 12
    for a, b in combinations(g.vertices, 2):
        if g.has_edge(a, b):
            continue
        assert flow.local_connectivity(g, a, b) == min_separator_bruteforce(g, a, b)


@pytest.mark.parametrize("n,k", [(4, 2), (5, 3), (5, 4)])
def test_path_count_bounded_by_degree(n, k):
    g = build(n, k)
    rng = random.Random(3)
    for _ in range(30):
        a, b = rng.sample(g.vertices, 2)
        fam = flow.max_disjoint_paths(g, a, b)
        assert len(fam) <= min(g.degree(a), g.degree(b))
        flow.check_family(g, fam.paths, shared=(a, b))
        assert all(p[0] == a and p[-1] == b for p in fam)


def test_limit_stops_early(b53):
    assert flow.local_connectivity(b53, 0, 59, limit=2) == 2


def test_vertex_connectivity_matches_networkx():
    for n, k in [(3, 2), (4, 2), (4, 3), (5, 2)]:
        g = build(n, k)
        G = nx.Graph(g.edges())
        assert flow.vertex_connectivity(g) == nx.node_connectivity(G) == n - 1


@pytest.mark.parametrize("n,k", [(3, 2), (4, 2), (5, 2), (5, 3), (5, 4), (4, 3)])
def test_vertex_connectivity_values(n, k):
    assert flow.vertex_connectivity(build(n, k)) == n - 1


def test_complement_connectivity(b53):
    for i in range(1, 6):
        assert flow.vertex_connectivity(b53.complement_view(i)) == 3


def test_disconnected_view_has_connectivity_zero(b42):
    d = b42.decompose()
    view = graph.SubgraphView(b42, d.blocks[1] | d.blocks[2] - {v(b42, "12"), v(b42, "21")})
    assert not view.is_connected()
    assert flow.vertex_connectivity(view) == 0


def test_fan_to_neighbors(b42):
    x = v(b42, "12")
    fam = flow.fan(b42, x, b42.neighbors(x), 3)
    assert sorted(fam.paths) == sorted((x, y) for y in b42.neighbors(x))


def test_fan_in_complement_b52():
    g = build(5, 2)
    H = g.complement_view(1)
    v3 = g.vertex("34")
    targets = [outside_neighbor(g.labels[u]) for u in (g.vertex("21"), g.vertex("31"), g.vertex("41"))]
    targets = [g.index[t] for t in targets]
    assert all(t in H.allowed for t in targets)
    fam = flow.fan(H, v3, targets, 3)
    assert len(fam) == 3
    assert {p[-1] for p in fam} == set(targets)
    for p in fam:
        assert p[0] == v3 and not set(p[1:-1]) & set(targets)
        assert set(p) <= H.allowed


def test_fan_with_x_in_targets(b42):
    x = v(b42, "12")
    fam = flow.fan(b42, x, [x, v(b42, "34"), v(b42, "43")], 2)
    assert (x,) in fam.paths and len(fam) == 2


def test_fan_insufficient(b42):
    with pytest.raises(InsufficientPaths):
        flow.fan(b42, 0, [5], 2)


def test_set_paths_overlap_is_trivial(b42):
    X = [0, 1, 2]
    fam = flow.disjoint_set_paths(b42, X, X, 3)
    assert sorted(fam.paths) == [(0,), (1,), (2,)]


def test_set_paths_matching_b53(b53):
    d = b53.decompose()
    ce = graph.cross_edges(b53, d, 1, 2)
    X = [u for u, _ in ce.edges]
    Y = [w for _, w in ce.edges]
    fam = flow.disjoint_set_paths(b53, X, Y, 3)
    assert len(fam) == 3
    seen = [x for p in fam for x in p]
    assert len(seen) == len(set(seen))
    for p in fam:
        assert p[0] in X and p[-1] in Y
        assert not set(p[1:-1]) & (set(X) | set(Y))


def test_set_paths_do_not_cross_common_vertices(b42):
    X = [0, 1, 2, 3]
    Y = [3, 9, 10, 11]
    fam = flow.disjoint_set_paths(b42, X, Y, 3)
    interiors = {x for p in fam for x in p[1:-1]}
    assert 3 not in interiors
    assert (3,) in fam.paths


def random_csr(rng, nv, deg):
    G = nx.random_regular_graph(deg, nv, seed=rng.randrange(10**6))
    indptr, indices = [0], []
    for u in range(nv):
        indices.extend(sorted(G[u]))
        indptr.append(len(indices))
    return indptr, indices


@pytest.mark.skipif(_flow_ext is None, reason="compiled kernel not built")
def test_backends_agree_exactly():
    rng = random.Random(11)
    for _ in range(40):
        nv = rng.choice([8, 12, 20, 30])
        indptr, indices = random_csr(rng, nv, rng.choice([3, 4]))
        py = _flow_py.FlowGraph(indptr, indices)
        cy = _flow_ext.FlowGraph(indptr, indices)
        for _ in range(10):
            pool = rng.sample(range(nv), 6)
            src, snk, blk = pool[:2], pool[2:4], pool[4:5]
            cap = rng.choice([1, 2, nv + 1])
            args = (src, snk, cap, cap, rng.choice([-1, 1, 2]), blk)
            assert py.disjoint_paths(*args) == cy.disjoint_paths(*args)


def test_python_kernel_matches_networkx_local_connectivity():
    rng = random.Random(5)
    for _ in range(20):
        indptr, indices = random_csr(rng, 14, 3)
        G = nx.Graph()
        for u in range(14):
            G.add_edges_from((u, w) for w in indices[indptr[u]:indptr[u + 1]])
        fg = _flow_py.FlowGraph(indptr, indices)
        a, b = rng.sample(range(14), 2)
        if G.has_edge(a, b):
            continue
        got = fg.disjoint_paths([a], [b], 15, 15, -1, [])
        assert len(got) == nx.node_connectivity(G, a, b)


def test_pure_python_switch():
    import os
    import subprocess
    import sys

    code = ("from bsgraph._backend import BACKEND; from bsgraph import flow; "
            "from bsgraph.graph import build; print(BACKEND, flow.vertex_connectivity(build(5, 3)))")
    env = dict(os.environ, BSGRAPH_PURE_PYTHON="1")
    res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert res.stdout.split() == ["python", "4"]
