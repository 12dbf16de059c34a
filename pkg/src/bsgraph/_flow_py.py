"""Pure-Python unit-capacity vertex-disjoint path kernel.

Mirrors ``_flow_ext.pyx`` exactly (same arc order, same BFS, same path
decomposition), so both backends return identical path families.
"""


class FlowGraph:
    """Undirected graph in CSR form over local indices 0..N-1."""

    def __init__(self, indptr, indices):
        self.indptr = [int(x) for x in indptr]
        self.indices = [int(x) for x in indices]
        self.n = len(self.indptr) - 1

    def disjoint_paths(self, sources, sinks, source_cap=1, sink_cap=1, limit=-1, blocked=()):
        """Vertex-capacitated max flow from ``sources`` to ``sinks``.

        Every vertex has capacity 1 except sources (``source_cap``) and sinks
        (``sink_cap``).  Arcs into sources and out of sinks are omitted, so each
        path touches exactly one source (its first vertex) and one sink (its
        last).  ``blocked`` vertices are unusable.  Returns the paths as lists
        of local vertex indices.
        """
        N = self.n
        indptr, indices = self.indptr, self.indices
        role = [0] * N
        cap = [1] * N
        for s in sources:
            role[s] = 1
            cap[s] = source_cap
        for t in sinks:
            if role[t] == 1:
                raise ValueError("a vertex cannot be both source and sink")
            role[t] = 2
            cap[t] = sink_cap
        for b in blocked:
            if role[b] != 0:
                raise ValueError("a blocked vertex cannot be a source or sink")
            role[b] = 3
            cap[b] = 0
        S, T = 2 * N, 2 * N + 1
        n_nodes = 2 * N + 2
        to: list[int] = []
        res: list[int] = []
        adj: list[list[int]] = [[] for _ in range(n_nodes)]

        def add(u, v, c):
            adj[u].append(len(to))
            to.append(v)
            res.append(c)
            adj[v].append(len(to))
            to.append(u)
            res.append(0)

        for i in range(N):
            add(2 * i, 2 * i + 1, cap[i])
        for i in range(N):
            if role[i] >= 2:
                continue
            for p in range(indptr[i], indptr[i + 1]):
                j = indices[p]
                if role[j] == 0 or role[j] == 2:
                    add(2 * i + 1, 2 * j, 1)
        for s in sources:
            add(S, 2 * s, cap[s])
        for t in sinks:
            add(2 * t + 1, T, cap[t])
        orig = list(res)

        flow = 0
        parent = [-1] * n_nodes
        while limit < 0 or flow < limit:
            for x in range(n_nodes):
                parent[x] = -1
            parent[S] = -2
            queue = [S]
            head = 0
            found = False
            while head < len(queue) and not found:
                x = queue[head]
                head += 1
                for a in adj[x]:
                    if res[a] > 0:
                        y = to[a]
                        if parent[y] == -1:
                            parent[y] = a
                            if y == T:
                                found = True
                                break
                            queue.append(y)
            if not found:
                break
            y = T
            while y != S:
                a = parent[y]
                res[a] -= 1
                res[a ^ 1] += 1
                y = to[a ^ 1]
            flow += 1

        fl = [orig[a] - res[a] if a % 2 == 0 else 0 for a in range(len(to))]
        paths = []
        for _ in range(flow):
            x = S
            path = []
            while x != T:
                for a in adj[x]:
                    if a % 2 == 0 and fl[a] > 0:
                        fl[a] -= 1
                        x = to[a]
                        break
                else:
                    raise RuntimeError("flow decomposition stalled")
                if x < 2 * N and x % 2 == 0:
                    path.append(x // 2)
            paths.append(path)
        return paths
