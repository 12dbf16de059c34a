"""Independent checks: Steiner tree-set verifier, exact packing search,
connectivity bounds, and a brute-force separator oracle for tiny graphs."""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .graph import BudgetExceeded

Edge = tuple[int, int]
DEFAULT_ORACLE_BUDGET = 24
DEFAULT_R_CAP = 4


def oracle_budget() -> int:
    return int(os.environ.get("BSGRAPH_ORACLE_BUDGET", DEFAULT_ORACLE_BUDGET))


class SearchLimit(RuntimeError):
    """The packing search hit its node limit before deciding."""


@dataclass
class VerificationReport:
    violations: list[tuple[str, object]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.passed

    def add(self, kind: str, witness) -> None:
        self.violations.append((kind, witness))

    def to_dict(self) -> dict:
        return {
            "pass": self.passed,
            "violations": [{"kind": k, "witness": w} for k, w in self.violations],
        }


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def tree_vertices(edges: Iterable[Edge]) -> set[int]:
    return {x for e in edges for x in e}


def _is_tree(edges: set[Edge]) -> bool:
    verts = tree_vertices(edges)
    if not verts or len(edges) != len(verts) - 1:
        return False
    adj: dict[int, list[int]] = {v: [] for v in verts}
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    start = next(iter(verts))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(verts)


def check_trees(g, S: Sequence[int], trees: Sequence[Iterable[Edge]]) -> VerificationReport:
    report = VerificationReport()
    S_set = set(S)
    if len(S_set) != len(S):
        report.add("missing-S", {"S": list(S), "reason": "repeated vertex"})
    norm = [{norm_edge(*e) for e in t} for t in trees]
    vsets = []
    for idx, edges in enumerate(norm):
        bad = sorted(e for e in edges if not (e[0] in g and e[1] in g and g.has_edge(*e)))
        if bad:
            report.add("non-edge", {"tree": idx, "edges": bad})
        if not _is_tree(edges):
            report.add("not-tree", {"tree": idx})
        verts = tree_vertices(edges)
        missing = sorted(S_set - verts)
        if missing:
            report.add("missing-S", {"tree": idx, "vertices": missing})
        vsets.append(verts)
    for a, b in combinations(range(len(norm)), 2):
        extra = sorted((vsets[a] & vsets[b]) - S_set)
        if extra:
            report.add("vertex-overlap", {"trees": [a, b], "vertices": extra})
        shared = sorted(norm[a] & norm[b])
        if shared:
            report.add("edge-overlap", {"trees": [a, b], "edges": shared})
    return report


def verify_tree_set(g, ts) -> VerificationReport:
    """Check a SteinerTreeSet-like object (attributes ``S`` and ``trees``)."""
    return check_trees(g, ts.S, ts.trees)


def kappa3_upper_bound(g) -> int:
    degs = {v: len(g.neighbors(v)) for v in g.vertices}
    delta = min(degs.values())
    for v in g.vertices:
        if degs[v] == delta and any(degs[w] == delta for w in g.neighbors(v)):
            return delta - 1
    return delta


def kappa3_lower_bound(kappa: int) -> int:
    if kappa < 1:
        raise ValueError("kappa must be >= 1")
    q, r = divmod(kappa, 4)
    return 3 * q + (r + 1) // 2


def min_separator_bruteforce(g, u: int, v: int) -> int:
    """Smallest vertex set separating non-adjacent u and v, by enumeration."""
    if g.has_edge(u, v):
        raise ValueError("u and v are adjacent; no vertex separator exists")
    others = [w for w in g.vertices if w not in (u, v)]
    for size in range(len(others) + 1):
        for cut in combinations(others, size):
            removed = set(cut)
            seen = {u}
            stack = [u]
            while stack:
                x = stack.pop()
                for y in g.neighbors(x):
                    if y not in removed and y not in seen:
                        seen.add(y)
                        stack.append(y)
            if v not in seen:
                return size
    raise AssertionError("unreachable: removing all other vertices separates u, v")


class _Packer:
    """Backtracking search for r internally disjoint S-trees.

    Every non-S vertex is given to one tree or left unused, and every S-S
    edge is given to at most one tree.  A branch is cut only when a
    necessary condition fails: some S vertex has fewer undecided incident
    resources than trees still lacking an edge at it, or some tree can no
    longer connect S through its own and undecided vertices.
    """

    UNDECIDED = -2
    UNUSED = -1

    def __init__(self, g, S: Sequence[int], r: int, node_limit: int | None):
        self.g = g
        self.S = tuple(S)
        self.r = r
        self.node_limit = node_limit
        self.nodes = 0
        verts = list(g.vertices)
        self.local = {v: i for i, v in enumerate(verts)}
        self.verts = verts
        N = len(verts)
        self.adj = [[self.local[w] for w in g.neighbors(v)] for v in verts]
        self.s_loc = [self.local[s] for s in self.S]
        s_set = set(self.s_loc)
        self.is_s = [i in s_set for i in range(N)]
        self.ss_edges = [
            (a, b) for a, b in combinations(sorted(self.s_loc), 2) if b in self.adj[a]
        ]
        self.ss_at = {s: [e for e, ab in enumerate(self.ss_edges) if s in ab] for s in self.s_loc}
        self.owner = [self.UNDECIDED] * N
        for s in self.s_loc:
            self.owner[s] = -3
        self.ss_owner = [self.UNDECIDED] * len(self.ss_edges)
        self.order = self._vertex_order()

    def _vertex_order(self) -> list[int]:
        # S-neighbours first, then by BFS distance from S, ties by rank.
        dist = {s: 0 for s in self.s_loc}
        queue = deque(self.s_loc)
        while queue:
            x = queue.popleft()
            for y in self.adj[x]:
                if y not in dist:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        rest = [v for v in range(len(self.verts)) if not self.is_s[v]]
        return sorted(rest, key=lambda v: (dist.get(v, len(self.verts)), v))

    def _connected(self, t: int, strict: bool) -> bool:
        owner, ss_owner = self.owner, self.ss_owner
        ok_owner = (t,) if strict else (t, self.UNDECIDED)
        start = self.s_loc[0]
        seen = {start}
        stack = [start]
        while stack:
            x = stack.pop()
            for y in self.adj[x]:
                if y in seen:
                    continue
                if self.is_s[y]:
                    if self.is_s[x]:
                        e = self.ss_edges.index(norm_edge(x, y))
                        if ss_owner[e] not in ok_owner:
                            continue
                elif owner[y] not in ok_owner:
                    continue
                seen.add(y)
                stack.append(y)
        return all(s in seen for s in self.s_loc)

    def _degree_ok(self) -> bool:
        owner, ss_owner = self.owner, self.ss_owner
        for s in self.s_loc:
            covered = set()
            avail = 0
            for w in self.adj[s]:
                if self.is_s[w]:
                    continue
                o = owner[w]
                if o >= 0:
                    covered.add(o)
                elif o == self.UNDECIDED:
                    avail += 1
            for e in self.ss_at[s]:
                o = ss_owner[e]
                if o >= 0:
                    covered.add(o)
                elif o == self.UNDECIDED:
                    avail += 1
            if avail < self.r - len(covered):
                return False
        return True

    def _tree_edges(self, t: int) -> frozenset[Edge]:
        owner, ss_owner = self.owner, self.ss_owner

        def usable(x, y):
            if self.is_s[y]:
                if self.is_s[x]:
                    return ss_owner[self.ss_edges.index(norm_edge(x, y))] == t
                return True
            return owner[y] == t

        start = self.s_loc[0]
        parent = {start: None}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in self.adj[x]:
                if y not in parent and usable(x, y):
                    parent[y] = x
                    queue.append(y)
        children: dict[int, int] = {}
        for y, x in parent.items():
            if x is not None:
                children[x] = children.get(x, 0) + 1
        keep = set(parent)
        leaves = [v for v in keep if children.get(v, 0) == 0 and not self.is_s[v]]
        while leaves:
            v = leaves.pop()
            keep.discard(v)
            p = parent[v]
            children[p] -= 1
            if children[p] == 0 and not self.is_s[p]:
                leaves.append(p)
        vs = self.verts
        return frozenset(norm_edge(vs[y], vs[parent[y]]) for y in keep if parent[y] is not None)

    def solve(self) -> list[frozenset[Edge]] | None:
        if self._search(0, 0, 0):
            return [self._tree_edges(t) for t in range(self.r)]
        return None

    def _search(self, e_pos: int, v_pos: int, used: int) -> bool:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise SearchLimit(f"packing search exceeded {self.node_limit} nodes")
        if not self._degree_ok():
            return False
        if not all(self._connected(t, strict=False) for t in range(self.r)):
            return False
        if used == self.r and all(self._connected(t, strict=True) for t in range(self.r)):
            return True
        if e_pos < len(self.ss_edges):
            slots = self.ss_owner
            idx = e_pos
            nxt = (e_pos + 1, v_pos)
        elif v_pos < len(self.order):
            slots = self.owner
            idx = self.order[v_pos]
            nxt = (e_pos, v_pos + 1)
        else:
            return False
        for t in list(range(min(used + 1, self.r))) + [self.UNUSED]:
            slots[idx] = t
            if self._search(nxt[0], nxt[1], max(used, t + 1)):
                return True
        slots[idx] = self.UNDECIDED
        return False


def pack_trees(g, S: Sequence[int], r: int, node_limit: int | None = None):
    """Find r internally disjoint S-trees, or return None if none exist."""
    if r == 0:
        return []
    return _Packer(g, S, r, node_limit).solve()


@dataclass(frozen=True)
class OracleResult:
    S: tuple[int, ...]
    value: int
    witness: tuple[frozenset[Edge], ...]
    capped: bool

    def to_dict(self, g=None) -> dict:
        lab = g.label if g is not None else (lambda v: v)
        return {
            "S": [lab(v) for v in self.S],
            "kappa": self.value,
            "capped": self.capped,
            "witness": [[[lab(u), lab(v)] for u, v in sorted(t)] for t in self.witness],
        }


def kappa3_oracle(g, S: Sequence[int], r_cap: int = DEFAULT_R_CAP, budget: int | None = None) -> OracleResult:
    """Exact number of internally disjoint S-trees (up to ``r_cap``).

    ``capped`` is True when r_cap trees were found, so the true value may be
    larger; otherwise infeasibility of value+1 was shown by exhausting the
    search.
    """
    limit = oracle_budget() if budget is None else budget
    if len(g.vertices) > limit:
        raise BudgetExceeded(f"oracle budget {limit} < {len(g.vertices)} vertices")
    S = tuple(S)
    if len(set(S)) != 3:
        raise ValueError("S must hold three distinct vertices")
    best: list[frozenset[Edge]] = []
    for r in range(1, r_cap + 1):
        found = pack_trees(g, S, r)
        if found is None:
            return OracleResult(S, r - 1, tuple(best), False)
        assert check_trees(g, S, found).passed
        best = found
    return OracleResult(S, r_cap, tuple(best), True)
