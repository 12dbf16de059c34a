# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled unit-capacity vertex-disjoint path kernel (twin of _flow_py)."""

from libc.stdlib cimport malloc, free


cdef class FlowGraph:
    cdef public int n
    cdef int* indptr
    cdef int* indices
    cdef int nnz

    def __cinit__(self, indptr, indices):
        cdef int i
        self.n = len(indptr) - 1
        self.nnz = len(indices)
        self.indptr = <int*> malloc((self.n + 1) * sizeof(int))
        self.indices = <int*> malloc((self.nnz + 1) * sizeof(int))
        if self.indptr == NULL or self.indices == NULL:
            raise MemoryError()
        for i in range(self.n + 1):
            self.indptr[i] = indptr[i]
        for i in range(self.nnz):
            self.indices[i] = indices[i]

    def __dealloc__(self):
        free(self.indptr)
        free(self.indices)

    def disjoint_paths(self, sources, sinks, int source_cap=1, int sink_cap=1, int limit=-1,
                       blocked=()):
        cdef int N = self.n
        cdef int S = 2 * N, T = 2 * N + 1
        cdef int n_nodes = 2 * N + 2
        cdef int max_arcs = 2 * (N + self.nnz + len(sources) + len(sinks))
        cdef int *role = <int*> malloc(N * sizeof(int))
        cdef int *cap = <int*> malloc(N * sizeof(int))
        cdef int *to = <int*> malloc(max_arcs * sizeof(int))
        cdef int *res = <int*> malloc(max_arcs * sizeof(int))
        cdef int *orig = <int*> malloc(max_arcs * sizeof(int))
        cdef int *nxt = <int*> malloc(max_arcs * sizeof(int))
        cdef int *first = <int*> malloc(n_nodes * sizeof(int))
        cdef int *last = <int*> malloc(n_nodes * sizeof(int))
        cdef int *parent = <int*> malloc(n_nodes * sizeof(int))
        cdef int *queue = <int*> malloc(n_nodes * sizeof(int))
        cdef int i, j, p, a, x, y, head, tail, flow, n_arcs, found
        cdef object path
        if (role == NULL or cap == NULL or to == NULL or res == NULL or orig == NULL
                or nxt == NULL or first == NULL or last == NULL or parent == NULL
                or queue == NULL):
            raise MemoryError()
        try:
            for i in range(N):
                role[i] = 0
                cap[i] = 1
            for s in sources:
                role[<int> s] = 1
                cap[<int> s] = source_cap
            for t in sinks:
                if role[<int> t] == 1:
                    raise ValueError("a vertex cannot be both source and sink")
                role[<int> t] = 2
                cap[<int> t] = sink_cap
            for b in blocked:
                if role[<int> b] != 0:
                    raise ValueError("a blocked vertex cannot be a source or sink")
                role[<int> b] = 3
                cap[<int> b] = 0
            for x in range(n_nodes):
                first[x] = -1
                last[x] = -1
            n_arcs = 0

            for i in range(N):
                _add(2 * i, 2 * i + 1, cap[i], &n_arcs, to, res, nxt, first, last)
            for i in range(N):
                if role[i] >= 2:
                    continue
                for p in range(self.indptr[i], self.indptr[i + 1]):
                    j = self.indices[p]
                    if role[j] == 0 or role[j] == 2:
                        _add(2 * i + 1, 2 * j, 1, &n_arcs, to, res, nxt, first, last)
            for s in sources:
                _add(S, 2 * <int> s, cap[<int> s], &n_arcs, to, res, nxt, first, last)
            for t in sinks:
                _add(2 * <int> t + 1, T, cap[<int> t], &n_arcs, to, res, nxt, first, last)
            for a in range(n_arcs):
                orig[a] = res[a]

            flow = 0
            while limit < 0 or flow < limit:
                for x in range(n_nodes):
                    parent[x] = -1
                parent[S] = -2
                queue[0] = S
                head = 0
                tail = 1
                found = 0
                while head < tail and not found:
                    x = queue[head]
                    head += 1
                    a = first[x]
                    while a != -1:
                        if res[a] > 0:
                            y = to[a]
                            if parent[y] == -1:
                                parent[y] = a
                                if y == T:
                                    found = 1
                                    break
                                queue[tail] = y
                                tail += 1
                        a = nxt[a]
                if not found:
                    break
                y = T
                while y != S:
                    a = parent[y]
                    res[a] -= 1
                    res[a ^ 1] += 1
                    y = to[a ^ 1]
                flow += 1

            for a in range(n_arcs):
                if a % 2 == 0:
                    orig[a] = orig[a] - res[a]
                else:
                    orig[a] = 0
            paths = []
            for _ in range(flow):
                x = S
                path = []
                while x != T:
                    a = first[x]
                    while a != -1:
                        if a % 2 == 0 and orig[a] > 0:
                            break
                        a = nxt[a]
                    if a == -1:
                        raise RuntimeError("flow decomposition stalled")
                    orig[a] -= 1
                    x = to[a]
                    if x < 2 * N and x % 2 == 0:
                        path.append(x // 2)
                paths.append(path)
            return paths
        finally:
            free(role); free(cap); free(to); free(res); free(orig); free(nxt)
            free(first); free(last); free(parent); free(queue)


cdef inline void _add(int u, int v, int c, int* n_arcs, int* to, int* res, int* nxt,
                      int* first, int* last):
    cdef int a = n_arcs[0]
    _link(u, a, nxt, first, last)
    to[a] = v
    res[a] = c
    _link(v, a + 1, nxt, first, last)
    to[a + 1] = u
    res[a + 1] = 0
    n_arcs[0] = a + 2


cdef inline void _link(int node, int a, int* nxt, int* first, int* last):
    nxt[a] = -1
    if last[node] == -1:
        first[node] = a
    else:
        nxt[last[node]] = a
    last[node] = a
