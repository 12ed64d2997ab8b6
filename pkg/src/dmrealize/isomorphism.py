"""Backtracking graph isomorphism for desk-scale graphs.

The search maps pattern vertices one at a time, always preferring a vertex
with an already-mapped neighbour so candidates come from that neighbour's
image.  Every candidate must agree with all mapped vertices on hop distance,
which subsumes adjacency and prunes hard on highly symmetric graphs.
"""

from __future__ import annotations

from collections import Counter, deque
from typing import Sequence

from .graph import WeightedGraph

UNREACHABLE = -1


def hop_distances(g: WeightedGraph) -> list[list[int]]:
    """Unweighted BFS distances, ``-1`` between components."""
    adj = g.adjacency
    m = g.vertex_count
    out = []
    for s in range(m):
        dist = [UNREACHABLE] * m
        dist[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if dist[v] == UNREACHABLE:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        out.append(dist)
    return out


def _vertex_invariants(g: WeightedGraph, hops, respect_weights: bool):
    inv = []
    for v in range(g.vertex_count):
        key = (len(g.adjacency[v]), tuple(sorted(Counter(hops[v]).items())))
        if respect_weights:
            key += (tuple(sorted(g.weight(v, u) for u in g.adjacency[v])),)
        inv.append(key)
    return inv


def _bfs_order(g: WeightedGraph) -> list[int]:
    order, seen = [], set()
    for root in range(g.vertex_count):
        if root in seen:
            continue
        seen.add(root)
        queue = deque([root])
        while queue:
            u = queue.popleft()
            order.append(u)
            for v in g.adjacency[u]:
                if v not in seen:
                    seen.add(v)
                    queue.append(v)
    return order


def find_isomorphism(
    pattern: WeightedGraph,
    target: WeightedGraph,
    respect_weights: bool = False,
    order: Sequence[int] | None = None,
) -> dict[int, int] | None:
    """Return a bijection pattern -> target preserving adjacency, or None.

    Candidates are tried in increasing target index along ``order`` (BFS
    order by default), so the first bijection found is the lexicographically
    smallest image sequence of ``order``.
    """
    m = pattern.vertex_count
    if m != target.vertex_count or len(pattern.weights) != len(target.weights):
        return None
    if sorted(pattern.degrees()) != sorted(target.degrees()):
        return None
    if respect_weights and sorted(pattern.weights.values()) != sorted(target.weights.values()):
        return None

    hp, ht = hop_distances(pattern), hop_distances(target)
    inv_p = _vertex_invariants(pattern, hp, respect_weights)
    inv_t = _vertex_invariants(target, ht, respect_weights)
    if Counter(inv_p) != Counter(inv_t):
        return None

    order = list(order) if order is not None else _bfs_order(pattern)
    if sorted(order) != list(range(m)):
        raise ValueError("order must be a permutation of the pattern vertices")
    position = {v: i for i, v in enumerate(order)}
    # an earlier neighbour of each pattern vertex, if any
    anchor = []
    for v in order:
        earlier = [u for u in pattern.adjacency[v] if position[u] < position[v]]
        anchor.append(min(earlier, key=position.get) if earlier else None)

    mapping: dict[int, int] = {}
    used = [False] * m

    def consistent(p: int, t: int) -> bool:
        if inv_p[p] != inv_t[t]:
            return False
        hp_row, ht_row = hp[p], ht[t]
        for q, s in mapping.items():
            if hp_row[q] != ht_row[s]:
                return False
            if respect_weights and hp_row[q] == 1 and pattern.weight(p, q) != target.weight(t, s):
                return False
        return True

    def extend(depth: int) -> bool:
        if depth == m:
            return True
        p = order[depth]
        a = anchor[depth]
        candidates = target.adjacency[mapping[a]] if a is not None else range(m)
        for t in candidates:
            if used[t] or not consistent(p, t):
                continue
            mapping[p] = t
            used[t] = True
            if extend(depth + 1):
                return True
            del mapping[p]
            used[t] = False
        return False

    return dict(mapping) if extend(0) else None


def are_isomorphic(
    g1: WeightedGraph, g2: WeightedGraph, respect_weights: bool = False
) -> dict[int, int] | None:
    """Vertex bijection g1 -> g2 preserving adjacency (and weights), or None."""
    return find_isomorphism(g1, g2, respect_weights)
