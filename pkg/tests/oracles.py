"""Independent brute-force oracles on bitmask-encoded labeled graphs.

These deliberately share no code with the package: graphs are lists of
vertex pairs over ``0..n-1`` and every decision is made by exhaustive search.
"""

from __future__ import annotations

import itertools


def pairs_of(n: int) -> list[tuple[int, int]]:
    return list(itertools.combinations(range(n), 2))


def labeled_edge_sets(n: int):
    """Every edge set on ``0..n-1`` as a list of pairs."""
    pairs = pairs_of(n)
    for mask in range(1 << len(pairs)):
        yield [p for i, p in enumerate(pairs) if mask >> i & 1]


def sparse_by_subset_count(n: int, edges, k: int) -> bool:
    """Definition of k-sparsity: every vertex subset spans at most k|B| edges."""
    for mask in range(1, 1 << n):
        inside = sum(1 for u, v in edges if mask >> u & 1 and mask >> v & 1)
        if inside > k * bin(mask).count("1"):
            return False
    return True


def orientable_by_search(n: int, edges, k: int) -> bool:
    """Try both directions of every edge with plain backtracking."""
    load = [0] * n

    def go(i):
        if i == len(edges):
            return True
        for tail in edges[i]:
            if load[tail] < k:
                load[tail] += 1
                if go(i + 1):
                    return True
                load[tail] -= 1
        return False

    return go(0)


def _acyclic(n: int, succ: list[int]) -> bool:
    remaining = (1 << n) - 1
    while remaining:
        sinks = [v for v in range(n) if remaining >> v & 1 and not succ[v] & remaining]
        if not sinks:
            return False
        for v in sinks:
            remaining &= ~(1 << v)
    return True


def acyclic_orientations(n: int, edges, k: int):
    """Every acyclic orientation with out-degree at most k, as successor bitmasks."""
    m = len(edges)
    for bits in range(1 << m):
        succ = [0] * n
        for i, (u, v) in enumerate(edges):
            if bits >> i & 1:
                succ[v] |= 1 << u
            else:
                succ[u] |= 1 << v
        if all(bin(s).count("1") <= k for s in succ) and _acyclic(n, succ):
            yield succ


def closed_masks(n: int, succ: list[int]) -> set[int]:
    return {mask for mask in range(1 << n)
            if all(not mask >> v & 1 or succ[v] & ~mask == 0 for v in range(n))}


def strong_subsets_by_orientation(n: int, edges) -> set[int]:
    """Vertex masks that are successor-closed in some acyclic 2-orientation."""
    found: set[int] = set()
    for succ in acyclic_orientations(n, edges, 2):
        found |= closed_masks(n, succ)
        if len(found) == 1 << n:
            break
    return found
