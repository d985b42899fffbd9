"""Exact minimum set cover and maximum independent set by branch and bound.

Both searches work on int bitmasks, are deterministic, and stop with
:class:`BudgetExhausted` rather than return a heuristic answer.
"""
from __future__ import annotations

DEFAULT_NODE_BUDGET = 2_000_000


class BudgetExhausted(RuntimeError):
    """The branch-and-bound node budget ran out before optimality was proven."""


def popcount(x: int) -> int:
    return bin(x).count("1")


def bits(x: int) -> list[int]:
    out = []
    i = 0
    while x:
        if x & 1:
            out.append(i)
        x >>= 1
        i += 1
    return out


def reduce_masks(masks: list[int]) -> list[int]:
    """Indices of the masks that are neither duplicates nor strictly dominated."""
    first: dict[int, int] = {}
    for i, m in enumerate(masks):
        if m and m not in first:
            first[m] = i
    uniq = sorted(first, key=lambda m: (-popcount(m), first[m]))
    kept: list[int] = []
    for m in uniq:
        if not any(m | k == k for k in kept):
            kept.append(m)
    return sorted(first[m] for m in kept)


def greedy_cover(n: int, masks: list[int]) -> list[int]:
    full = (1 << n) - 1
    left = full
    chosen = []
    while left:
        j = max(range(len(masks)), key=lambda i: (popcount(masks[i] & left), -i))
        if not masks[j] & left:
            raise ValueError("masks do not cover the universe")
        chosen.append(j)
        left &= ~masks[j]
    return chosen


def min_set_cover(n: int, masks: list[int], budget: int = DEFAULT_NODE_BUDGET) -> list[int]:
    """Indices of a minimum-cardinality subfamily of ``masks`` covering ``range(n)``.

    Raises ``ValueError`` when the masks cannot cover the universe.
    """
    if n == 0:
        return []
    full = (1 << n) - 1
    union = 0
    for m in masks:
        union |= m
    if union & full != full:
        raise ValueError("masks do not cover the universe")
    idx = reduce_masks([m & full for m in masks])
    cand = [masks[i] & full for i in idx]
    covering = [[j for j, m in enumerate(cand) if m >> e & 1] for e in range(n)]
    best = [idx[j] for j in greedy_cover(n, cand)]
    best_len = len(best)
    if best_len == 1:
        return best
    max_gain = max(popcount(m) for m in cand)
    nodes = 0

    def dfs(left: int, chosen: list[int]) -> None:
        nonlocal best, best_len, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted(f"set cover exceeded {budget} nodes")
        if not left:
            if len(chosen) < best_len:
                best = [idx[j] for j in chosen]
                best_len = len(chosen)
            return
        need = -(-popcount(left) // max_gain)
        if len(chosen) + need >= best_len:
            return
        e = min(bits(left), key=lambda b: len(covering[b]))
        options = sorted(covering[e], key=lambda j: (-popcount(cand[j] & left), j))
        for j in options:
            chosen.append(j)
            dfs(left & ~cand[j], chosen)
            chosen.pop()

    dfs(full, [])
    return sorted(best)


def _clique_cover_bound(cand: int, adj: list[int]) -> int:
    """Greedy partition of ``cand`` into cliques; the count bounds the independence number."""
    count = 0
    left = cand
    while left:
        v = (left & -left).bit_length() - 1
        clique = 1 << v
        common = adj[v] & left
        while common:
            u = (common & -common).bit_length() - 1
            clique |= 1 << u
            common &= adj[u]
        left &= ~clique
        count += 1
    return count


def _greedy_independent(n: int, adj: list[int]) -> int:
    left = (1 << n) - 1
    size = 0
    while left:
        v = min(bits(left), key=lambda u: (popcount(adj[u] & left), u))
        size += 1
        left &= ~(adj[v] | (1 << v))
    return size


def max_independent_set(n: int, adj: list[int], budget: int = DEFAULT_NODE_BUDGET) -> list[int]:
    """Lexicographically first maximum independent set of a graph on ``range(n)``.

    ``adj[v]`` is the neighbour bitmask of ``v`` (no self-loops).
    """
    if n == 0:
        return []
    best: list[int] = []
    # beat the greedy size minus one so the first maximum set in DFS order survives
    best_size = _greedy_independent(n, adj) - 1
    nodes = 0

    def dfs(cand: int, chosen: list[int]) -> None:
        nonlocal best, best_size, nodes
        nodes += 1
        if nodes > budget:
            raise BudgetExhausted(f"independent set search exceeded {budget} nodes")
        if not cand:
            if len(chosen) > best_size:
                best = list(chosen)
                best_size = len(chosen)
            return
        if len(chosen) + _clique_cover_bound(cand, adj) <= best_size:
            return
        v = (cand & -cand).bit_length() - 1
        chosen.append(v)
        dfs(cand & ~adj[v] & ~(1 << v), chosen)
        chosen.pop()
        dfs(cand & ~(1 << v), chosen)

    dfs((1 << n) - 1, [])
    return best
