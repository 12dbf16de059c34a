"""Compare the compiled and pure-Python flow kernels.

Runs the same vertex-connectivity workload through each FlowGraph class and
checks that both return identical path families.

    python3 benchmarks/bench_flow.py [-n 6] [-k 5] [--repeat 3]
"""
import argparse
import time
from itertools import combinations

from bsgraph import _flow_py
from bsgraph.graph import build

try:
    from bsgraph import _flow_ext
except ImportError:
    _flow_ext = None


def workload(g):
    """Pairs a connectivity computation would query: a fixed vertex against
    every non-neighbour, then non-adjacent neighbour pairs."""
    x = g.vertices[0]
    nbrs = set(g.neighbors(x))
    pairs = [(x, w) for w in g.vertices if w != x and w not in nbrs]
    pairs += [(a, b) for a, b in combinations(sorted(nbrs), 2) if not g.has_edge(a, b)]
    return pairs


def run(cls, g, pairs):
    indptr, indices, local = g.csr
    fg = cls(indptr, indices)
    big = len(g.vertices) + 1
    return [fg.disjoint_paths([local[u]], [local[v]], big, big, -1, []) for u, v in pairs]


def timed(cls, g, pairs, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        result = run(cls, g, pairs)
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("-n", type=int, default=6)
    ap.add_argument("-k", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    g = build(args.n, args.k)
    targets = [("graph", g)] + [(f"minus copy {i}", g.complement_view(i)) for i in (1, args.n)]
    print(f"B_{{{args.n},{args.k}}}: {len(g.vertices)} vertices, best of {args.repeat}")
    print(f"{'target':<14} {'pairs':>6} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, view in targets:
        pairs = workload(view)
        t_py, r_py = timed(_flow_py.FlowGraph, view, pairs, args.repeat)
        if _flow_ext is None:
            print(f"{name:<14} {len(pairs):>6} {t_py:>10.3f} {'n/a':>10} {'n/a':>8}")
            continue
        t_cy, r_cy = timed(_flow_ext.FlowGraph, view, pairs, args.repeat)
        assert r_py == r_cy, f"kernels disagree on {name}"
        print(f"{name:<14} {len(pairs):>6} {t_py:>10.3f} {t_cy:>10.3f} {t_py / t_cy:>7.1f}x")


if __name__ == "__main__":
    main()
