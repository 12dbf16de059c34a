import json
import random
from itertools import combinations

import networkx as nx
import pytest
from _support import AdjGraph, complete, cycle

from bsgraph import flow, trees
from bsgraph.graph import BudgetExceeded, build
from bsgraph.verify import (
    VerificationReport,
    check_trees,
    kappa3_lower_bound,
    kappa3_oracle,
    kappa3_upper_bound,
    min_separator_bruteforce,
    pack_trees,
)


def kinds(report):
    return {v["kind"] for v in report.to_dict()["violations"]}


def test_report_shape():
    r = VerificationReport()
    assert r.passed and bool(r) and r.to_dict() == {"pass": True, "violations": []}
    r.add("not-tree", {"tree": 0})
    assert not r.passed and json.dumps(r.to_dict())


def test_shared_edge_is_overlap():
    g = complete(5)
    S = (0, 1, 2)
    t1 = {(0, 1), (1, 2)}
    t2 = {(0, 1), (0, 2)}
    report = check_trees(g, S, [t1, t2])
    assert kinds(report) == {"edge-overlap"}


def test_missing_vertex():
    g = complete(5)
    report = check_trees(g, (0, 1, 2), [{(0, 1), (1, 3)}])
    assert kinds(report) == {"missing-S"}


def test_cycle_and_disconnected_are_not_trees():
    g = complete(5)
    S = (0, 1, 2)
    assert kinds(check_trees(g, S, [{(0, 1), (1, 2), (0, 2)}])) == {"not-tree"}
    assert kinds(check_trees(g, S, [{(0, 1), (2, 3)}])) >= {"not-tree"}


def test_non_edge(b42):
    S = (b42.vertex("12"), b42.vertex("21"), b42.vertex("34"))
    assert not b42.has_edge(S[0], S[2])
    report = check_trees(b42, S, [{tuple(sorted((S[0], S[2]))), tuple(sorted((S[0], S[1])))}])
    assert kinds(report) == {"non-edge"}


def test_vertex_overlap_outside_S():
    g = complete(5)
    t1 = {(0, 3), (1, 3), (1, 2)}
    t2 = {(2, 3), (2, 4), (0, 4), (1, 4)}
    assert kinds(check_trees(g, (0, 1, 2), [t1, t2])) == {"vertex-overlap"}


def test_complete_construction_passes():
    assert check_trees(complete(5), (0, 1, 2), trees.trees_complete(5, (0, 1, 2)).trees).passed


def test_upper_bound_examples():
    assert kappa3_upper_bound(AdjGraph([(0, 1), (0, 2), (0, 3)])) == 1
    assert kappa3_upper_bound(cycle(6)) == 1
    for n, k in [(4, 2), (5, 3), (5, 4)]:
        assert kappa3_upper_bound(build(n, k)) == n - 2


@pytest.mark.parametrize("kappa,bound", [(1, 1), (2, 1), (3, 2), (4, 3), (5, 4), (7, 5), (8, 6)])
def test_lower_bound_values(kappa, bound):
    assert kappa3_lower_bound(kappa) == bound


def test_lower_bound_rejects_zero():
    with pytest.raises(ValueError):
        kappa3_lower_bound(0)


def test_bruteforce_separator_on_cycle():
    assert min_separator_bruteforce(cycle(6), 0, 3) == 2
    with pytest.raises(ValueError):
        min_separator_bruteforce(cycle(6), 0, 1)


def test_oracle_cycle():
    g = build(3, 2)
    for S in combinations(g.vertices, 3):
        res = kappa3_oracle(g, S)
        assert res.value == 1 and not res.capped
        assert check_trees(g, S, res.witness).passed


def test_oracle_complete_graphs():
    for m in (4, 5, 6):
        res = kappa3_oracle(complete(m), (0, 1, 2), r_cap=m)
        assert res.value == m - 2


def test_oracle_b42_every_triple(b42):
    for S in combinations(b42.vertices, 3):
        assert kappa3_oracle(b42, S).value == 2


def test_oracle_capped(b42):
    res = kappa3_oracle(complete(6), (0, 1, 2), r_cap=2)
    assert res.capped and res.value == 2


def test_oracle_budget(b53):
    with pytest.raises(BudgetExceeded):
        kappa3_oracle(b53, (0, 1, 2))
    with pytest.raises(BudgetExceeded):
        kappa3_oracle(build(4, 2), (0, 1, 2), budget=10)


def test_oracle_result_to_dict(b42):
    doc = kappa3_oracle(b42, (0, 1, 2)).to_dict(b42)
    assert doc["S"] == ["12", "13", "14"] and doc["kappa"] == 2
    assert len(doc["witness"]) == 2


def test_packing_impossible_returns_none():
    star = AdjGraph([(0, 1), (0, 2), (0, 3)])
    assert pack_trees(star, (1, 2, 3), 2) is None
    assert len(pack_trees(star, (1, 2, 3), 1)) == 1


def to_nx(g):
    return nx.Graph([(u, v) for u in g.vertices for v in g.neighbors(u)])


@pytest.mark.parametrize("name", ["B32", "B42", "K5", "C7", "prism"])
def test_sandwich_small_graphs(name):
    g = {
        "B32": build(3, 2),
        "B42": build(4, 2),
        "K5": complete(5),
        "C7": cycle(7),
        "prism": AdjGraph([(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]),
    }[name]
    kappa = nx.node_connectivity(to_nx(g))
    lo, hi = kappa3_lower_bound(kappa), kappa3_upper_bound(g)
    exact = min(kappa3_oracle(g, S).value for S in combinations(g.vertices, 3))
    assert lo <= exact <= hi


def test_construction_matches_oracle_b43_sample():
    g = build(4, 3)
    rng = random.Random(43)
    for S in rng.sample(list(combinations(g.vertices, 3)), 40):
        built = trees.trees3(g, S)
        assert len(built) == kappa3_oracle(g, S, r_cap=2).value == 2
