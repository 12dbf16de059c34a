"""Disjoint paths, fans and vertex connectivity via unit vertex-capacity flow.

Every function accepts a full :class:`~bsgraph.graph.BubbleSortGraph` or a
:class:`~bsgraph.graph.SubgraphView`; vertices are parent ranks.  Each
returned family is re-checked for simplicity and disjointness before it is
handed back.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from ._backend import FlowGraph

Path = tuple[int, ...]


class InsufficientPaths(RuntimeError):
    """Fewer disjoint paths exist than requested."""


@dataclass(frozen=True)
class PathFamily:
    paths: tuple[Path, ...]
    kind: str
    sources: frozenset[int]
    targets: frozenset[int]

    def __len__(self) -> int:
        return len(self.paths)

    def __iter__(self):
        return iter(self.paths)

    def __getitem__(self, i: int) -> Path:
        return self.paths[i]


def _flow_graph(g) -> FlowGraph:
    fg = g._cache.get("flowgraph")
    if fg is None:
        indptr, indices, _ = g.csr
        fg = FlowGraph(indptr, indices)
        g._cache["flowgraph"] = fg
    return fg


def _run(g, sources, sinks, source_cap=1, sink_cap=1, limit=-1, blocked=()) -> list[Path]:
    _, _, local = g.csr
    verts = g.vertices
    raw = _flow_graph(g).disjoint_paths(
        [local[s] for s in sources],
        [local[t] for t in sinks],
        source_cap,
        sink_cap,
        -1 if limit is None else limit,
        [local[b] for b in blocked],
    )
    return [tuple(verts[i] for i in p) for p in raw]


def check_family(g, paths: Sequence[Path], shared: Iterable[int] = ()) -> None:
    """Raise AssertionError unless paths are simple, follow edges of ``g``,
    and meet only inside ``shared``."""
    shared = set(shared)
    seen: dict[int, int] = {}
    for idx, p in enumerate(paths):
        if len(set(p)) != len(p):
            raise AssertionError(f"path {p} repeats a vertex")
        for a, b in zip(p, p[1:]):
            if not g.has_edge(a, b):
                raise AssertionError(f"path {p} uses non-edge {a}-{b}")
        for v in p:
            if v in shared:
                continue
            if v in seen:
                raise AssertionError(f"paths {seen[v]} and {idx} share vertex {v}")
            seen[v] = idx


def max_disjoint_paths(g, u: int, v: int, limit: int | None = None) -> PathFamily:
    """Maximum family of internally disjoint u-v paths (direct edge counts once)."""
    if u == v:
        raise ValueError("endpoints must differ")
    big = len(g.vertices) + 1
    paths = _run(g, [u], [v], big, big, limit)
    check_family(g, paths, shared=(u, v))
    return PathFamily(tuple(paths), "uv", frozenset([u]), frozenset([v]))


def local_connectivity(g, u: int, v: int, limit: int | None = None) -> int:
    return len(max_disjoint_paths(g, u, v, limit))


def vertex_connectivity(g) -> int:
    """Exact vertex connectivity.

    Fixes a minimum-degree vertex x; any minimum separator either misses x
    (then it separates x from a non-neighbour) or contains x (then it
    separates two non-adjacent neighbours of x).  Flows stop early once they
    reach the best value found so far.
    """
    verts = g.vertices
    if len(verts) < 2:
        raise ValueError("need at least two vertices")
    x = min(verts, key=lambda w: (g.degree(w), w))
    best = g.degree(x)
    if not g.is_connected():
        return 0
    nbrs = set(g.neighbors(x))
    for w in verts:
        if w == x or w in nbrs:
            continue
        best = min(best, local_connectivity(g, x, w, limit=best))
        if best == 0:
            return 0
    for a, b in combinations(sorted(nbrs), 2):
        if not g.has_edge(a, b):
            best = min(best, local_connectivity(g, a, b, limit=best))
    return best


def connectivity_at_least(g, r: int) -> bool:
    """Memoized check that vertex_connectivity(g) >= r."""
    key = "kappa"
    if key not in g._cache:
        g._cache[key] = vertex_connectivity(g)
    return g._cache[key] >= r


def fan(g, x: int, targets: Iterable[int], r: int) -> PathFamily:
    """r paths from x to r distinct vertices of ``targets``, internally
    avoiding ``targets`` and pairwise meeting only at x.

    If x itself is a target it contributes the single-vertex path (x,) and
    r-1 further paths are routed to the remaining targets.
    """
    targets = set(targets)
    paths: list[Path] = []
    if x in targets:
        paths.append((x,))
        targets.discard(x)
    need = r - len(paths)
    if need > 0:
        if len(targets) < need:
            raise InsufficientPaths(f"only {len(targets)} targets for a {r}-fan")
        found = _run(g, [x], sorted(targets), need, 1, need)
        if len(found) < need:
            raise InsufficientPaths(f"found {len(paths) + len(found)} of {r} fan paths")
        paths.extend(found)
    paths = paths[:r]
    check_family(g, paths, shared=(x,))
    ends = [p[-1] for p in paths]
    assert len(set(ends)) == len(ends)
    return PathFamily(tuple(paths), "fan", frozenset([x]), frozenset(ends))


def disjoint_set_paths(g, X: Iterable[int], Y: Iterable[int], r: int) -> PathFamily:
    """r pairwise vertex-disjoint X-Y paths with interiors outside X and Y."""
    X, Y = set(X), set(Y)
    if len(X) < r or len(Y) < r:
        raise InsufficientPaths("X and Y need at least r vertices each")
    common = sorted(X & Y)
    paths: list[Path] = [(v,) for v in common[:r]]
    need = r - len(paths)
    if need > 0:
        found = _run(g, sorted(X - Y), sorted(Y - X), 1, 1, need, blocked=common)
        if len(found) < need:
            raise InsufficientPaths(f"found {len(paths) + len(found)} of {r} (X,Y)-paths")
        paths.extend(found)
    check_family(g, paths)
    return PathFamily(tuple(paths), "xy", frozenset(p[0] for p in paths), frozenset(p[-1] for p in paths))
