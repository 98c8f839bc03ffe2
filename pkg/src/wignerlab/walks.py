"""Moment-method combinatorics: Catalan numbers, modified Catalan
numbers, generating-function identities and brute-force enumeration of
admissible closed walks on trees.

All arithmetic here is exact integer arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import RangeError

_CATALAN_MAX = 30
_MODIFIED_MAX = 28
_WALK_BUDGET = {"two": 5, "four": 4}


def catalan(m: int) -> int:
    """Catalan number C_m, with C_0 = 1."""
    if not 0 <= m <= _CATALAN_MAX:
        raise RangeError(f"catalan supported for 0 <= m <= {_CATALAN_MAX}")
    return math.comb(2 * m, m) // (m + 1)


def modified_catalan(m: int) -> int:
    """Modified Catalan number binom(2m+2, m-1) for m >= 1, else 0."""
    if m > _MODIFIED_MAX:
        raise RangeError(f"modified_catalan supported for m <= {_MODIFIED_MAX}")
    if m < 1:
        return 0
    return math.comb(2 * m + 2, m - 1)


@lru_cache(maxsize=None)
def modified_catalan_recurrence(m: int) -> int:
    """Same sequence computed strictly by the splitting recurrence

    D_m = 2 sum_{i+j=m-1} C_i D_j + sum_{i+j+k+l=m-1} C_i C_j C_k C_l.
    """
    if m > _MODIFIED_MAX:
        raise RangeError(f"recurrence supported for m <= {_MODIFIED_MAX}")
    if m < 1:
        return 0
    c = [catalan(i) for i in range(m)]
    # Quadruple convolution of the Catalan sequence, truncated at m-1.
    c2 = [sum(c[i] * c[s - i] for i in range(s + 1)) for s in range(m)]
    c4 = [sum(c2[i] * c2[s - i] for i in range(s + 1)) for s in range(m)]
    linear = 2 * sum(c[i] * modified_catalan_recurrence(m - 1 - i) for i in range(m))
    return linear + c4[m - 1]


@dataclass(frozen=True)
class WalkProfile:
    """Edge-multiplicity profile of an admissible closed walk."""

    m: int
    multiplicities: dict
    length: int


def _edge_graph_is_tree(edges, n_vertices: int) -> bool:
    if len(edges) != n_vertices - 1:
        return False
    parent = list(range(n_vertices + 1))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for a, b in edges:
        ra, rb = find(a), find(b)
        if ra == rb:
            return False  # cycle
        parent[ra] = rb
    return True


def count_admissible_walks(m: int, profile: str) -> int:
    """Exact count of 2- or 4-admissible closed walks on trees of m edges.

    A walk lives on vertex set {1, ..., m+1}, starts and ends at vertex
    1, uses first-appearance labeling (vertex j appears only after
    1..j-1), and traverses every edge exactly twice -- except, in the
    ``four`` profile, one edge traversed four times.  Exhaustive
    depth-first enumeration with multiplicity-budget pruning.
    """
    if profile not in _WALK_BUDGET:
        raise ValueError(f"profile must be 'two' or 'four', got {profile!r}")
    if not 1 <= m <= _WALK_BUDGET[profile]:
        raise RangeError(
            f"enumeration budget allows 1 <= m <= {_WALK_BUDGET[profile]} "
            f"for profile {profile!r}"
        )
    n_vertices = m + 1
    length = 2 * m + (2 if profile == "four" else 0)
    max_single = 4 if profile == "four" else 2
    count = 0
    counts: dict[tuple[int, int], int] = {}

    def remaining_demand(next_label: int) -> int:
        # Every touched edge still owes an even number of traversals and
        # every unvisited vertex costs at least two more traversals.
        owed = sum(2 - c for c in counts.values() if c == 1)
        owed += sum(1 for c in counts.values() if c == 3)
        owed += 2 * (n_vertices - next_label + 1)
        return owed

    def dfs(pos: int, steps_left: int, next_label: int):
        nonlocal count
        if steps_left == 0:
            if pos != 1 or next_label != n_vertices + 1:
                return
            if len(counts) != m:
                return
            mults = sorted(counts.values())
            if profile == "two":
                ok = mults == [2] * m
            else:
                ok = mults == [2] * (m - 1) + [4]
            if ok and _edge_graph_is_tree(list(counts), n_vertices):
                count += 1
            return
        if remaining_demand(next_label) > steps_left:
            return
        # Moves to already-labeled vertices.
        top = min(next_label, n_vertices + 1)
        for v in range(1, top):
            if v == pos:
                continue
            e = (pos, v) if pos < v else (v, pos)
            c = counts.get(e, 0)
            if c == 0 and len(counts) == m:
                continue
            if c >= max_single:
                continue
            if c >= 2 and profile == "two":
                continue
            if c >= 2 and profile == "four":
                # Only one edge may exceed multiplicity two.
                if any(x > 2 for k2, x in counts.items() if k2 != e):
                    continue
            counts[e] = c + 1
            dfs(v, steps_left - 1, next_label)
            if counts[e] == 1:
                del counts[e]
            else:
                counts[e] = c
        # Move to a brand-new vertex (first-appearance labeling).
        if next_label <= n_vertices and len(counts) < m:
            v = next_label
            e = (pos, v)
            counts[e] = 1
            dfs(v, steps_left - 1, next_label + 1)
            del counts[e]

    dfs(1, length, 2)
    return count


def _convolve(a: list[int], b: list[int], order: int) -> list[int]:
    return [
        sum(a[i] * b[s - i] for i in range(s + 1) if i < len(a) and s - i < len(b))
        for s in range(order + 1)
    ]


def series_identity_check(order: int) -> bool:
    """Check d(x) = 2x c(x) d(x) + x c(x)^4 coefficientwise through ``order``."""
    if not 1 <= order <= 25:
        raise RangeError("order must be in 1..25")
    c = [catalan(i) for i in range(order + 1)]
    d = [modified_catalan(i) for i in range(order + 1)]
    cd = _convolve(c, d, order)
    c2 = _convolve(c, c, order)
    c4 = _convolve(c2, c2, order)
    for s in range(order + 1):
        rhs = (2 * cd[s - 1] if s >= 1 else 0) + (c4[s - 1] if s >= 1 else 0)
        if d[s] != rhs:
            return False
    return True
