"""n-1 internally disjoint paths from a base vertex inside its copy.

Given v = p_1 p_2 ... p_{k-1} c in copy c of B_{n,k} (k >= 3), the paths are
indexed 2..n as in the construction:

* index i in 2..k-1 bubbles p_{i-1} rightwards to position k-1,
* index k is the trivial path (v,),
* index i in k+1..n first moves a fresh symbol q_i onto position 1 and then
  bubbles it to position k-1; the fresh symbols are [n] minus the symbols of
  v, in increasing order.

Each terminal's outside neighbour lands in a different copy, so the exit
copies are exactly [n] \\ {c}.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import perm
from .perm import Arrangement
from .verify import VerificationReport


class ExtensionError(RuntimeError):
    """An extended path failed its disjointness check."""


@dataclass(frozen=True)
class PathInCopy:
    vertices: tuple[Arrangement, ...]
    exit_vertex: Arrangement
    exit_copy: int

    @property
    def terminal(self) -> Arrangement:
        return self.vertices[-1]

    def __len__(self) -> int:
        return len(self.vertices)


def _path_in_copy(vertices: list[Arrangement]) -> PathInCopy:
    out = perm.outside_neighbor(vertices[-1])
    return PathInCopy(tuple(vertices), out, out[-1])


@dataclass(frozen=True)
class IdpResult:
    n: int
    k: int
    base: Arrangement
    paths: dict[int, PathInCopy]
    exits: dict[int, int]

    @property
    def copy(self) -> int:
        return self.base[-1]

    def path_to(self, copy: int) -> PathInCopy:
        return self.paths[self.exits[copy]]

    def fresh_symbols(self) -> list[int]:
        present = set(self.base)
        return [s for s in range(1, self.n + 1) if s not in present]


def idp_paths(n: int, k: int, v1: Arrangement) -> IdpResult:
    perm.check_params(n, k)
    if k < 3:
        raise ValueError("the bubbling construction needs k >= 3")
    v1 = perm.validate(v1, n, k)
    paths: dict[int, PathInCopy] = {}
    for i in range(2, k):
        t = v1
        verts = [t]
        for j in range(i, k):
            t = perm.apply_swap(t, j)
            verts.append(t)
        paths[i] = _path_in_copy(verts)
    paths[k] = _path_in_copy([v1])
    present = set(v1)
    fresh = [s for s in range(1, n + 1) if s not in present]
    for i, q in zip(range(k + 1, n + 1), fresh):
        t = perm.apply_first_move(v1, q)
        verts = [v1, t]
        for j in range(1, k - 1):
            t = perm.apply_swap(t, j + 1)
            verts.append(t)
        paths[i] = _path_in_copy(verts)
    exits = {p.exit_copy: i for i, p in paths.items()}
    return IdpResult(n, k, v1, paths, exits)


def check_disjoint(r: IdpResult) -> VerificationReport:
    """Pairwise vertex intersections must be exactly {base}; paths must be
    simple, stay in the base copy and follow edges."""
    report = VerificationReport()
    c = r.copy
    for i, p in sorted(r.paths.items()):
        vs = p.vertices
        if vs[0] != r.base:
            report.add("bad-start", {"path": i})
        if len(set(vs)) != len(vs):
            report.add("not-simple", {"path": i})
        if any(v[-1] != c for v in vs):
            report.add("off-copy", {"path": i})
        for a, b in zip(vs, vs[1:]):
            if not perm.are_adjacent(a, b):
                report.add("non-edge", {"path": i, "edge": [a, b]})
    idx = sorted(r.paths)
    for x in range(len(idx)):
        for y in range(x + 1, len(idx)):
            a, b = idx[x], idx[y]
            common = set(r.paths[a].vertices) & set(r.paths[b].vertices)
            if common != {r.base}:
                report.add("vertex-overlap", {"paths": [a, b], "vertices": sorted(common - {r.base})})
    return report


def check_exits(r: IdpResult) -> VerificationReport:
    report = VerificationReport()
    got = sorted(p.exit_copy for p in r.paths.values())
    want = sorted(set(range(1, r.n + 1)) - {r.copy})
    if got != want:
        report.add("exit-copies", {"got": got, "want": want})
    return report


def expected_exit(r: IdpResult, i: int) -> int:
    """Exit copy of path i predicted from the base symbols alone."""
    if i < r.k:
        return r.base[i - 2]
    if i == r.k:
        return r.base[r.k - 2]
    return r.fresh_symbols()[i - r.k - 1]


def _loop_erase(walk: list[Arrangement]) -> list[Arrangement]:
    out: list[Arrangement] = []
    where: dict[Arrangement, int] = {}
    for v in walk:
        if v in where:
            del out[where[v] + 1 :]
            where = {x: i for i, x in enumerate(out)}
        else:
            where[v] = len(out)
            out.append(v)
    return out


def extend_lead_path(r: IdpResult, target_copy: int) -> PathInCopy:
    """Extend the path that bubbles the first base symbol so that it exits
    into ``target_copy`` instead, keeping it disjoint from paths 3..n.

    ``target_copy`` must be the exit copy of a path with index >= 4.  If the
    target symbol already sits in the lead terminal it is bubbled to position
    k-1; otherwise it is brought in by a first-symbol move and then bubbled.
    The resulting walk is loop-erased: bubbling the symbol next to the lead
    symbol steps back onto the lead path (k = 4, target p_3 is the smallest
    case), and cutting the loop still leaves a vertex exiting into the target.
    """
    if r.k < 3:
        raise ValueError("needs k >= 3")
    owner = r.exits.get(target_copy)
    if owner is None or owner < 4:
        raise ValueError(f"copy {target_copy} is not the exit of a path with index >= 4")
    lead = r.paths[2]
    verts = list(lead.vertices)
    t = verts[-1]
    if target_copy in t:
        pos = t.index(target_copy) + 1
    else:
        t = perm.apply_first_move(t, target_copy)
        verts.append(t)
        pos = 1
    while pos < r.k - 1:
        t = perm.apply_swap(t, pos + 1)
        verts.append(t)
        pos += 1
    ext = _path_in_copy(_loop_erase(verts))
    problems = []
    if ext.exit_copy != target_copy:
        problems.append(f"exits into {ext.exit_copy}, not {target_copy}")
    for j, p in r.paths.items():
        if j >= 3 and set(p.vertices) & set(ext.vertices) != {r.base}:
            problems.append(f"meets path {j} outside the base")
    if problems:
        raise ExtensionError("; ".join(problems))
    return ext
