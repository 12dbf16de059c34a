"""Explicit (n,k)-bubble-sort graphs, copy decomposition, views and export."""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from math import factorial
from typing import Iterable

from . import perm
from .perm import Arrangement

DEFAULT_VERTEX_BUDGET = 10_080


class BudgetExceeded(RuntimeError):
    pass


def vertex_budget() -> int:
    return int(os.environ.get("BSGRAPH_VERTEX_BUDGET", DEFAULT_VERTEX_BUDGET))


class _GraphOps:
    """Shared read-only helpers for full graphs and induced views."""

    vertices: list[int]

    def neighbors(self, v: int) -> tuple[int, ...]:
        raise NotImplementedError

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.neighbors(u)

    def __contains__(self, v: int) -> bool:
        raise NotImplementedError

    def __len__(self) -> int:
        return len(self.vertices)

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted (min, max) rank pairs."""
        return [(u, v) for u in self.vertices for v in self.neighbors(u) if u < v]

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {self.vertices[0]}
        stack = [self.vertices[0]]
        while stack:
            u = stack.pop()
            for w in self.neighbors(u):
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == len(self.vertices)

    @cached_property
    def csr(self) -> tuple[list[int], list[int], dict[int, int]]:
        """(indptr, indices, local index) over self.vertices in rank order."""
        local = {v: i for i, v in enumerate(self.vertices)}
        indptr = [0]
        indices: list[int] = []
        for v in self.vertices:
            indices.extend(local[w] for w in self.neighbors(v))
            indptr.append(len(indices))
        return indptr, indices, local


class BubbleSortGraph(_GraphOps):
    """B_{n,k} with vertices identified by rank; adjacency lists sorted."""

    def __init__(self, n: int, k: int, budget: int | None = None):
        perm.check_params(n, k)
        size = perm.count(n, k)
        limit = vertex_budget() if budget is None else budget
        if size > limit:
            raise BudgetExceeded(f"B_{{{n},{k}}} has {size} vertices > budget {limit}")
        self.n = n
        self.k = k
        self.labels: list[Arrangement] = list(perm.all_arrangements(n, k))
        self.index = {a: r for r, a in enumerate(self.labels)}
        self.vertices = list(range(size))
        index = self.index
        self.adj: list[tuple[int, ...]] = [
            tuple(sorted(index[b] for b in perm.neighbors(a, n))) for a in self.labels
        ]
        self._adjsets = [frozenset(x) for x in self.adj]
        self._cache: dict = {}

    def __repr__(self) -> str:
        return f"BubbleSortGraph(n={self.n}, k={self.k})"

    def __contains__(self, v: int) -> bool:
        return 0 <= v < len(self.labels)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adjsets[u]

    @property
    def parent(self) -> BubbleSortGraph:
        return self

    def label(self, v: int) -> str:
        return perm.format_arrangement(self.labels[v], self.n)

    def vertex(self, a: Arrangement | str) -> int:
        if isinstance(a, str):
            a = perm.parse_arrangement(a, self.n, self.k)
        try:
            return self.index[tuple(a)]
        except KeyError:
            raise perm.ArrangementError(f"{a} is not a vertex of B_{{{self.n},{self.k}}}") from None

    def copy_of(self, v: int) -> int:
        return self.labels[v][-1]

    def outside(self, v: int) -> int:
        return self.index[perm.outside_neighbor(self.labels[v])]

    def decompose(self, j: int | None = None) -> Decomposition:
        return decompose(self, j)

    def copy_view(self, i: int) -> SubgraphView:
        key = ("copy", i)
        if key not in self._cache:
            self._cache[key] = SubgraphView(self, self.decompose().blocks[i])
        return self._cache[key]

    def complement_view(self, i: int) -> SubgraphView:
        key = ("minus", i)
        if key not in self._cache:
            self._cache[key] = remove_copy(self, self.decompose(), i)
        return self._cache[key]


class SubgraphView(_GraphOps):
    """Induced subgraph of a BubbleSortGraph on an allowed vertex set."""

    def __init__(self, parent: BubbleSortGraph, allowed: Iterable[int]):
        self.parent = parent
        self.allowed = frozenset(allowed)
        self.vertices = sorted(self.allowed)
        self.n = parent.n
        self.k = parent.k
        self._adj: dict[int, tuple[int, ...]] = {}
        self._cache: dict = {}

    def __repr__(self) -> str:
        return f"SubgraphView({self.parent!r}, |V|={len(self.vertices)})"

    def __contains__(self, v: int) -> bool:
        return v in self.allowed

    def neighbors(self, v: int) -> tuple[int, ...]:
        nb = self._adj.get(v)
        if nb is None:
            nb = tuple(w for w in self.parent.adj[v] if w in self.allowed)
            self._adj[v] = nb
        return nb

    def has_edge(self, u: int, v: int) -> bool:
        return u in self.allowed and v in self.allowed and self.parent.has_edge(u, v)

    def label(self, v: int) -> str:
        return self.parent.label(v)


@dataclass(frozen=True)
class Decomposition:
    position: int
    blocks: dict[int, frozenset[int]]

    def block_of(self, g: BubbleSortGraph, v: int) -> int:
        return g.labels[v][self.position - 1]


@dataclass(frozen=True)
class CrossEdgeSet:
    i: int
    j: int
    edges: tuple[tuple[int, int], ...] = field(default=())

    def is_matching(self) -> bool:
        ends = [x for e in self.edges for x in e]
        return len(ends) == len(set(ends))

    def __len__(self) -> int:
        return len(self.edges)


_GRAPHS: dict[tuple[int, int], BubbleSortGraph] = {}


def build(n: int, k: int, budget: int | None = None) -> BubbleSortGraph:
    """Build (and memoize) B_{n,k}."""
    key = (n, k)
    g = _GRAPHS.get(key)
    if g is None:
        g = BubbleSortGraph(n, k, budget)
        _GRAPHS[key] = g
    return g


def decompose(g: BubbleSortGraph, j: int | None = None) -> Decomposition:
    if j is None:
        j = g.k
    if not 1 <= j <= g.k:
        raise perm.ArrangementError(f"position {j} out of range [1, {g.k}]")
    key = ("decompose", j)
    if key in g._cache:
        return g._cache[key]
    blocks: dict[int, set[int]] = {i: set() for i in range(1, g.n + 1)}
    for v, a in enumerate(g.labels):
        blocks[a[j - 1]].add(v)
    d = Decomposition(j, {i: frozenset(b) for i, b in blocks.items()})
    g._cache[key] = d
    return d


def cross_edges(g: BubbleSortGraph, d: Decomposition, i: int, j: int) -> CrossEdgeSet:
    if i == j:
        raise ValueError("cross_edges needs two distinct copies")
    bj = d.blocks[j]
    edges = sorted((u, w) for u in d.blocks[i] for w in g.adj[u] if w in bj)
    return CrossEdgeSet(i, j, tuple(edges))


def remove_copy(g: BubbleSortGraph, d: Decomposition, i: int) -> SubgraphView:
    if i not in d.blocks:
        raise ValueError(f"no copy {i}")
    return SubgraphView(g, set(g.vertices) - d.blocks[i])


def relabel_to_copy_graph(a: Arrangement, i: int) -> Arrangement:
    """Drop the last position and squeeze [n]\\{i} onto [n-1] order-preservingly."""
    return tuple(s - 1 if s > i else s for s in a[:-1])


def relabel_from_copy_graph(b: Arrangement, i: int) -> Arrangement:
    return tuple(s + 1 if s >= i else s for s in b) + (i,)


def census(g: BubbleSortGraph) -> dict:
    n, k = g.n, g.k
    degs: dict[int, int] = {}
    for v in g.vertices:
        d = len(g.adj[v])
        degs[d] = degs.get(d, 0) + 1
    n_edges = sum(len(x) for x in g.adj) // 2
    expected = {
        "V": factorial(n) // factorial(n - k),
        "E": factorial(n) // factorial(n - k) * (n - 1) // 2,
        "regular": n - 1,
    }
    report: dict = {
        "n": n,
        "k": k,
        "V": len(g.vertices),
        "E": n_edges,
        "degrees": {str(d): c for d, c in sorted(degs.items())},
        "regular": next(iter(degs)) if len(degs) == 1 else None,
    }
    ok = report["V"] == expected["V"] and report["E"] == expected["E"]
    ok = ok and report["regular"] == expected["regular"]
    if k >= 2:
        d = decompose(g)
        sizes = sorted({len(b) for b in d.blocks.values()})
        cross = sorted({len(cross_edges(g, d, i, j)) for i, j in combinations(d.blocks, 2)})
        matchings = all(
            cross_edges(g, d, i, j).is_matching() for i, j in combinations(d.blocks, 2)
        )
        expected["blockSize"] = factorial(n - 1) // factorial(n - k)
        expected["crossEdge"] = factorial(n - 2) // factorial(n - k)
        report["blockSize"] = sizes[0] if len(sizes) == 1 else sizes
        report["crossEdge"] = cross[0] if len(cross) == 1 else cross
        report["matching"] = matchings
        ok = ok and report["blockSize"] == expected["blockSize"]
        ok = ok and report["crossEdge"] == expected["crossEdge"] and matchings
    report["expected"] = expected
    report["pass"] = bool(ok)
    return report


FORMATS = ("dot", "edge-list", "json")


def export(g: _GraphOps, fmt: str) -> bytes:
    """Serialize deterministically: vertices by rank, edges as sorted rank pairs."""
    edges = sorted(g.edges())
    if fmt == "edge-list":
        return "".join(f"{u} {v}\n" for u, v in edges).encode()
    if fmt == "dot":
        name = f"B_{g.n}_{g.k}"
        lines = [f"graph {name} {{"]
        lines += [f'  "{g.label(v)}";' for v in g.vertices]
        lines += [f'  "{g.label(u)}" -- "{g.label(v)}";' for u, v in edges]
        lines.append("}")
        return ("\n".join(lines) + "\n").encode()
    if fmt == "json":
        doc = {
            "n": g.n,
            "k": g.k,
            "vertices": [g.label(v) for v in g.vertices],
            "edges": [[u, v] for u, v in edges],
        }
        return (json.dumps(doc) + "\n").encode("utf-8")
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
