from itertools import combinations


class AdjGraph:
    """Tiny adjacency-dict graph for checks outside the bubble-sort family."""

    def __init__(self, edges):
        self.adj = {}
        for u, v in edges:
            self.adj.setdefault(u, set()).add(v)
            self.adj.setdefault(v, set()).add(u)
        self.vertices = sorted(self.adj)

    def neighbors(self, v):
        return tuple(sorted(self.adj[v]))

    def has_edge(self, u, v):
        return v in self.adj.get(u, ())

    def __contains__(self, v):
        return v in self.adj


def complete(m):
    return AdjGraph(combinations(range(m), 2))


def cycle(m):
    return AdjGraph((i, (i + 1) % m) for i in range(m))
