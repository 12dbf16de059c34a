"""Arrangements of k distinct symbols from [n] and the two bubble-sort moves.

An arrangement is a plain tuple of 1-based symbols, e.g. ``(2, 3, 1)``.
Positions are 1-based in every public function, matching the usual
a_1 a_2 ... a_k notation.  Ranks are 0-based.
"""

from __future__ import annotations

from math import factorial, perm
from typing import Iterator, Sequence

Arrangement = tuple[int, ...]


class ArrangementError(ValueError):
    """Raised for malformed arrangements or illegal moves."""


def check_params(n: int, k: int) -> None:
    if not (isinstance(n, int) and isinstance(k, int)):
        raise ArrangementError(f"n and k must be integers, got {n!r}, {k!r}")
    if not 1 <= k <= n - 1:
        raise ArrangementError(f"need 1 <= k <= n-1, got n={n}, k={k}")


def validate(a: Sequence[int], n: int, k: int | None = None) -> Arrangement:
    a = tuple(a)
    if k is not None and len(a) != k:
        raise ArrangementError(f"{a} has length {len(a)}, expected {k}")
    if len(set(a)) != len(a):
        raise ArrangementError(f"{a} repeats a symbol")
    if any(not 1 <= s <= n for s in a):
        raise ArrangementError(f"{a} has a symbol outside [1, {n}]")
    return a


def count(n: int, k: int) -> int:
    """Number of arrangements, n!/(n-k)!."""
    return perm(n, k)


def apply_swap(a: Arrangement, m: int) -> Arrangement:
    """Exchange positions m-1 and m (2 <= m <= k)."""
    if not 2 <= m <= len(a):
        raise ArrangementError(f"swap position {m} out of range [2, {len(a)}]")
    b = list(a)
    b[m - 2], b[m - 1] = b[m - 1], b[m - 2]
    return tuple(b)


def apply_first_move(a: Arrangement, s: int, n: int | None = None) -> Arrangement:
    """Replace the first symbol by ``s``, which must not occur in ``a``."""
    if s in a:
        raise ArrangementError(f"symbol {s} already present in {a}")
    if n is not None and not 1 <= s <= n:
        raise ArrangementError(f"symbol {s} outside [1, {n}]")
    return (s,) + a[1:]


def neighbors(a: Arrangement, n: int) -> list[Arrangement]:
    """All n-1 neighbours: k-1 adjacent swaps, then n-k first-symbol moves."""
    out = [apply_swap(a, m) for m in range(2, len(a) + 1)]
    present = set(a)
    out.extend((s,) + a[1:] for s in range(1, n + 1) if s not in present)
    return out


def are_adjacent(u: Arrangement, v: Arrangement) -> bool:
    if len(u) != len(v):
        raise ArrangementError(f"mismatched lengths: {u} vs {v}")
    diff = [i for i in range(len(u)) if u[i] != v[i]]
    if diff == [0]:
        return True
    if len(diff) == 2 and diff[1] == diff[0] + 1:
        i, j = diff
        return u[i] == v[j] and u[j] == v[i]
    return False


def _weights(n: int, k: int) -> list[int]:
    base = factorial(n - k)
    return [factorial(n - i) // base for i in range(1, k + 1)]


def rank(a: Arrangement, n: int) -> int:
    """Lexicographic rank among all arrangements of length len(a) over [n]."""
    k = len(a)
    r = 0
    seen: set[int] = set()
    for w, s in zip(_weights(n, k), a):
        c = sum(1 for x in range(1, s) if x not in seen)
        r += c * w
        seen.add(s)
    return r


def unrank(r: int, n: int, k: int) -> Arrangement:
    total = count(n, k)
    if not 0 <= r < total:
        raise ArrangementError(f"rank {r} out of range [0, {total})")
    pool = list(range(1, n + 1))
    out = []
    for w in _weights(n, k):
        c, r = divmod(r, w)
        out.append(pool.pop(c))
    return tuple(out)


def all_arrangements(n: int, k: int) -> Iterator[Arrangement]:
    """All arrangements in rank order."""
    from itertools import permutations

    return permutations(range(1, n + 1), k)


def copy_index(a: Arrangement, j: int | None = None) -> int:
    """Symbol at position j (default: last), i.e. the copy containing ``a``."""
    if j is None:
        j = len(a)
    if not 1 <= j <= len(a):
        raise ArrangementError(f"position {j} out of range [1, {len(a)}]")
    return a[j - 1]


def outside_neighbor(a: Arrangement) -> Arrangement:
    """The unique neighbour whose last symbol differs from that of ``a``."""
    if len(a) == 1:
        raise ArrangementError("k = 1 has no copy decomposition below K_n")
    return apply_swap(a, len(a))


def format_arrangement(a: Sequence[int], n: int) -> str:
    if n <= 9:
        return "".join(str(s) for s in a)
    return ",".join(str(s) for s in a)


def parse_arrangement(text: str, n: int, k: int | None = None) -> Arrangement:
    text = text.strip()
    if "," in text:
        parts = [p for p in text.split(",") if p.strip()]
    else:
        parts = list(text)
    try:
        a = tuple(int(p) for p in parts)
    except ValueError:
        raise ArrangementError(f"cannot parse arrangement {text!r}") from None
    return validate(a, n, k)
