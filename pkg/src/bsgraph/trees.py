"""n-2 internally disjoint trees connecting any three vertices of B_{n,k}.

Placement of S = {v1, v2, v3} across the copies (last symbol) selects the
construction:

* one copy: recurse into the copy (a smaller bubble-sort graph) for n-3
  trees and join the three outside neighbours through the rest of the graph;
* two copies: n-2 disjoint v1-v2 paths in their copy, one marked vertex per
  path, and an (n-2)-fan from v3 to the marked vertices' outside neighbours;
* three copies: one tree per remaining copy j built from exit paths into j,
  plus one tree assembled inside the three home copies.

Every result is verified.  Graphs with n <= 4, and any construction whose
check fails, fall back to the exhaustive packing search.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import flow, graph
from .graph import BubbleSortGraph, SubgraphView
from .idp import ExtensionError, idp_paths, extend_lead_path
from .verify import SearchLimit, check_trees, norm_edge, pack_trees

Edge = tuple[int, int]

COMPLETE = "complete"
BASE_SEARCH = "base-search"
K2_ONE, K2_TWO, K2_THREE = "k2:one-copy", "k2:two-copies", "k2:three-copies"
K3_ONE, K3_TWO = "k3:one-copy", "k3:two-copies"
K3_DIRECT, K3_EXTENDED = "k3:three-copies:direct", "k3:three-copies:extended"
CASE_TAGS = (K2_ONE, K2_TWO, K2_THREE, K3_ONE, K3_TWO, K3_DIRECT, K3_EXTENDED, COMPLETE, BASE_SEARCH)

SEARCH_NODE_LIMIT = 200_000


class ConstructionError(RuntimeError):
    pass


@dataclass
class SteinerTreeSet:
    S: tuple[int, ...]
    trees: list[frozenset[Edge]]
    tags: list[str]
    case: str
    fallback: bool = False
    notes: list[str] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.trees)

    def to_dict(self, g=None) -> dict:
        lab = g.label if g is not None else (lambda v: v)
        return {
            "S": [lab(v) for v in self.S],
            "trees": [[[lab(u), lab(v)] for u, v in sorted(t)] for t in self.trees],
            "caseTags": list(self.tags),
            "case": self.case,
            "fallback": self.fallback,
        }


def _path_edges(path: Sequence[int]) -> set[Edge]:
    return {norm_edge(a, b) for a, b in zip(path, path[1:])}


def _complete_trees(vertices: Iterable[int], S: Sequence[int]) -> list[frozenset[Edge]]:
    v1, v2, v3 = S
    trees = [frozenset({norm_edge(w, v1), norm_edge(w, v2), norm_edge(w, v3)})
             for w in sorted(vertices) if w not in S]
    trees.append(frozenset({norm_edge(v1, v2), norm_edge(v1, v3)}))
    return trees


def trees_complete(m: int, S: Sequence[int]) -> SteinerTreeSet:
    """m-2 trees in K_m on vertices 0..m-1: a star at every w outside S plus
    the path v2-v1-v3."""
    if m < 3:
        raise ValueError("need m >= 3")
    S = tuple(S)
    if len(set(S)) != 3 or any(not 0 <= v < m for v in S):
        raise ValueError(f"S must be three distinct vertices of K_{m}")
    trees = _complete_trees(range(m), S)
    return SteinerTreeSet(S, trees, [COMPLETE] * len(trees), COMPLETE)


def bfs_path(view, start: int, goal, blocked: frozenset[int] | set[int] = frozenset()) -> list[int] | None:
    """Shortest path from ``start`` to the first vertex satisfying ``goal``
    (a vertex or a predicate); ties go to lower ranks."""
    is_goal = goal if callable(goal) else (lambda v: v == goal)
    if start in blocked:
        return None
    parent = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        if is_goal(x):
            path = [x]
            while parent[path[-1]] is not None:
                path.append(parent[path[-1]])
            return path[::-1]
        for y in view.neighbors(x):
            if y not in parent and y not in blocked:
                parent[y] = x
                queue.append(y)
    return None


def steiner_connect(view, targets: Sequence[int]) -> frozenset[Edge]:
    """A tree inside ``view`` containing all targets, grown by BFS joins."""
    targets = list(targets)
    for t in targets:
        if t not in view:
            raise ValueError(f"target {t} not in view")
    tree_v = {targets[0]}
    edges: set[Edge] = set()
    for t in targets[1:]:
        if t in tree_v:
            continue
        path = bfs_path(view, t, lambda v: v in tree_v)
        if path is None:
            raise ValueError("targets are disconnected in the view")
        edges |= _path_edges(path)
        tree_v.update(path)
    return frozenset(edges)


def first_intersection(path: Sequence[int], obstacle) -> tuple[int, list[int]]:
    """First vertex of ``path`` lying in ``obstacle`` and the prefix before it;
    (terminal, whole path) if the path never meets the obstacle."""
    for i, v in enumerate(path):
        if v in obstacle:
            return v, list(path[:i])
    return path[-1], list(path)


def closed_neighborhood_exits(g: BubbleSortGraph, v: int) -> dict[int, int]:
    """For k = 2: map each other copy j to the vertex of N[v] (inside v's
    copy) whose outside neighbour lies in copy j."""
    if g.k != 2:
        raise ValueError("defined for k = 2")
    c = g.copy_of(v)
    closed = [v] + [w for w in g.neighbors(v) if g.copy_of(w) == c]
    out = {}
    for u in closed:
        out[g.copy_of(g.outside(u))] = u
    return out


def _validate_S(g, S) -> tuple[int, int, int]:
    S = tuple(S)
    if len(S) != 3 or len(set(S)) != 3:
        raise ValueError("S must hold three distinct vertices")
    for v in S:
        if v not in g:
            raise ValueError(f"{v} is not a vertex")
    return S


def _from_sub(g: BubbleSortGraph, sub: BubbleSortGraph, i: int, v: int) -> int:
    return g.index[graph.relabel_from_copy_graph(sub.labels[v], i)]


def _case_one_copy(g: BubbleSortGraph, S, tag: str):
    n, k = g.n, g.k
    i = g.copy_of(S[0])
    sub = graph.build(n - 1, k - 1)
    s_sub = [sub.index[graph.relabel_to_copy_graph(g.labels[v], i)] for v in S]
    inner = trees3(sub, s_sub)
    trees = [frozenset(norm_edge(_from_sub(g, sub, i, a), _from_sub(g, sub, i, b)) for a, b in t)
             for t in inner.trees]
    tags = list(inner.tags)
    outs = [g.outside(v) for v in S]
    H = g.complement_view(i)
    join = set(steiner_connect(H, outs))
    join |= {norm_edge(v, w) for v, w in zip(S, outs)}
    trees.append(frozenset(join))
    tags.append(tag)
    return trees, tags


def _split_pair(g, S):
    c = [g.copy_of(v) for v in S]
    for a, b, o in ((0, 1, 2), (0, 2, 1), (1, 2, 0)):
        if c[a] == c[b]:
            return S[a], S[b], S[o]
    raise AssertionError


def _case_two_copies(g: BubbleSortGraph, S, tag: str):
    n = g.n
    v1, v2, v3 = _split_pair(g, S)
    home = g.copy_of(v1)
    paths = flow.max_disjoint_paths(g.copy_view(home), v1, v2, limit=n - 2)
    if len(paths) < n - 2:
        raise ConstructionError(f"only {len(paths)} disjoint paths inside copy {home}")
    marks = [v1 if len(p) == 2 else p[-2] for p in paths]
    outs = [g.outside(x) for x in marks]
    H = g.complement_view(home)
    if not flow.connectivity_at_least(H, n - 2):
        raise ConstructionError("complement of a copy is not (n-2)-connected")
    fan = flow.fan(H, v3, outs, n - 2)
    by_end = {p[-1]: p for p in fan}
    trees = []
    for p, x, xo in zip(paths, marks, outs):
        edges = _path_edges(p) | {norm_edge(x, xo)} | _path_edges(by_end[xo])
        trees.append(frozenset(edges))
    return trees, [tag] * len(trees)


def _case_three_copies_k2(g: BubbleSortGraph, S):
    homes = [g.copy_of(v) for v in S]
    exits = [closed_neighborhood_exits(g, v) for v in S]
    trees = []
    removed: set[int] = set()
    for j in range(1, g.n + 1):
        if j in homes:
            continue
        us = [e[j] for e in exits]
        outs = [g.outside(u) for u in us]
        edges = set(steiner_connect(g.copy_view(j), outs))
        for v, u, uo in zip(S, us, outs):
            edges.add(norm_edge(u, uo))
            if u != v:
                edges.add(norm_edge(v, u))
                removed.add(u)
        trees.append(frozenset(edges))
    allowed = set().union(*(g.decompose().blocks[c] for c in homes)) - removed
    trees.append(steiner_connect(SubgraphView(g, allowed), S))
    return trees, [K2_THREE] * len(trees)


def _case_three_copies_k3(g: BubbleSortGraph, S, notes: list[str]):
    n, k = g.n, g.k
    homes = [g.copy_of(v) for v in S]
    results = [idp_paths(n, k, g.labels[v]) for v in S]

    def ranks(p):
        return [g.index[a] for a in p.vertices]

    # paths[i][j]: path of S[i] exiting into copy j, as rank lists
    paths = [{j: ranks(r.path_to(j)) for j in r.exits} for r in results]
    others = [j for j in range(1, n + 1) if j not in homes]
    legs = []
    tag = K3_DIRECT
    for i in (0, 1):
        home = homes[i]
        partners = (homes[1 - i], homes[2])
        third_path = paths[2][home]
        w = g.outside(third_path[-1])
        route = bfs_path(g.copy_view(home), w, S[i])
        owner = {}
        for j, p in paths[i].items():
            for x in p:
                owner.setdefault(x, set()).add(j)
        t, prefix = first_intersection(route, owner)
        hit = owner[t]
        via = next((j for j in partners if j in hit), None)
        if via is None:
            via = min(hit)
        seg = paths[i][via][: paths[i][via].index(t) + 1]
        leg = _path_edges(third_path) | {norm_edge(third_path[-1], w)}
        leg |= _path_edges(prefix + [t]) | _path_edges(seg)
        legs.append(leg)
        if via in partners:
            continue
        # the tree through copy `via` lost its path; find it a replacement
        tag = K3_EXTENDED
        used = set(prefix) | set(seg)
        for j in others:
            if j != via:
                used |= set(paths[i][j])
        used.discard(S[i])
        paths[i][via] = _replacement(g, results[i], i, S[i], via, used, partners, notes)
    trees = [frozenset(legs[0] | legs[1])]
    for j in others:
        ends = [paths[i][j][-1] for i in range(3)]
        outs = [g.outside(u) for u in ends]
        edges = set(steiner_connect(g.copy_view(j), outs))
        for i in range(3):
            edges |= _path_edges(paths[i][j])
            edges.add(norm_edge(ends[i], outs[i]))
        trees.append(frozenset(edges))
    return trees, [tag] * len(trees)


def _replacement(g, result, i, v, target, used, partners, notes) -> list[int]:
    """A path from v inside its copy exiting into ``target`` that avoids
    ``used``: the extended lead path when it is free, else a BFS route."""
    lead_exit = result.paths[2].exit_copy
    if lead_exit in partners and result.exits[target] >= 4:
        try:
            ext = extend_lead_path(result, target)
            path = [g.index[a] for a in ext.vertices]
            if not (set(path) & used):
                notes.append(f"S[{i}]: lead path extended into copy {target}")
                return path
        except ExtensionError:
            pass
    home = g.copy_of(v)
    path = bfs_path(
        g.copy_view(home),
        v,
        lambda x: g.copy_of(g.outside(x)) == target,
        blocked=used,
    )
    if path is None:
        raise ConstructionError(f"no free route from S[{i}] into copy {target}")
    notes.append(f"S[{i}]: rerouted into copy {target}")
    return path


def _base_search(g, S, fallback: bool, node_limit: int | None = SEARCH_NODE_LIMIT) -> SteinerTreeSet:
    r = g.n - 2
    try:
        found = pack_trees(g, S, r, node_limit=node_limit)
    except SearchLimit as exc:
        raise ConstructionError(f"packing search gave up: {exc}") from exc
    if found is None:
        raise ConstructionError(f"no {r} internally disjoint trees exist for S={S}")
    return SteinerTreeSet(tuple(S), list(found), [BASE_SEARCH] * r, BASE_SEARCH, fallback)


def _finish(g, S, build_fn, case: str) -> SteinerTreeSet:
    notes: list[str] = []
    try:
        trees, tags = build_fn(notes)
    except (ConstructionError, flow.InsufficientPaths, ValueError) as exc:
        notes.append(f"construction failed: {exc}")
    else:
        if len(trees) == g.n - 2 and check_trees(g, S, trees).passed:
            return SteinerTreeSet(S, trees, tags, case, False, notes)
        notes.append("construction failed verification")
    ts = _base_search(g, S, fallback=True)
    ts.notes = notes
    return ts


def trees_k2(g: BubbleSortGraph, S: Sequence[int]) -> SteinerTreeSet:
    if g.k != 2 or g.n < 3:
        raise ValueError("needs k = 2 and n >= 3")
    S = _validate_S(g, S)
    if g.n <= 4:
        return _base_search(g, S, fallback=False)
    homes = {g.copy_of(v) for v in S}
    if len(homes) == 1:
        return _finish(g, S, lambda notes: _case_one_copy(g, S, K2_ONE), K2_ONE)
    if len(homes) == 2:
        return _finish(g, S, lambda notes: _case_two_copies(g, S, K2_TWO), K2_TWO)
    return _finish(g, S, lambda notes: _case_three_copies_k2(g, S), K2_THREE)


def trees_k3(g: BubbleSortGraph, S: Sequence[int]) -> SteinerTreeSet:
    if not 3 <= g.k <= g.n - 1:
        raise ValueError("needs 3 <= k <= n-1")
    S = _validate_S(g, S)
    if g.n <= 4:
        return _base_search(g, S, fallback=False)
    homes = {g.copy_of(v) for v in S}
    if len(homes) == 1:
        return _finish(g, S, lambda notes: _case_one_copy(g, S, K3_ONE), K3_ONE)
    if len(homes) == 2:
        return _finish(g, S, lambda notes: _case_two_copies(g, S, K3_TWO), K3_TWO)

    def build_fn(notes):
        return _case_three_copies_k3(g, S, notes)

    ts = _finish(g, S, build_fn, K3_DIRECT)
    if not ts.fallback and ts.tags and ts.tags[0] == K3_EXTENDED:
        ts.case = K3_EXTENDED
    return ts


def trees3(g: BubbleSortGraph, S: Sequence[int]) -> SteinerTreeSet:
    """Dispatch on k: complete graph, k = 2, or k >= 3."""
    S = _validate_S(g, S)
    if g.k == 1:
        ts = SteinerTreeSet(S, _complete_trees(g.vertices, S), [], COMPLETE)
        ts.tags = [COMPLETE] * len(ts.trees)
        return ts
    if g.k == 2:
        return trees_k2(g, S)
    return trees_k3(g, S)
