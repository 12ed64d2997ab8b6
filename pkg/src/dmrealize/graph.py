"""Weighted simple graphs, the GP/Kneser family generators, and girth."""

from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping

Edge = tuple[int, int]

INFINITE = math.inf


class ParameterError(ValueError):
    """Family parameters outside their domain."""


def as_rational(value) -> Fraction:
    """Exact conversion of ints, Fractions and ``p/q`` / decimal strings.

    Floats are refused: a binary float is rarely the number the caller meant.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not weights")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot convert {type(value).__name__} exactly to a rational")


def edge_key(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class WeightedGraph:
    """Vertex-labelled simple graph with positive rational edge weights.

    Vertices are the indices ``0..len(labels)-1``; ``weights`` maps each
    edge ``(i, j)`` with ``i < j`` to its weight.
    """

    labels: tuple[str, ...]
    weights: Mapping[Edge, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        labels = tuple(self.labels)
        if not labels:
            raise ValueError("a graph needs at least one vertex")
        if len(set(labels)) != len(labels):
            raise ValueError("vertex labels must be unique")
        m = len(labels)
        weights = {}
        for (a, b), w in self.weights.items():
            if a == b:
                raise ValueError(f"loop at vertex {labels[a] if 0 <= a < m else a}")
            if not (0 <= a < m and 0 <= b < m):
                raise ValueError(f"edge ({a}, {b}) has an endpoint outside 0..{m - 1}")
            key = edge_key(a, b)
            if key in weights:
                raise ValueError(f"multi-edge between {labels[a]} and {labels[b]}")
            w = as_rational(w)
            if w <= 0:
                raise ValueError(f"edge {labels[a]}-{labels[b]} has non-positive weight {w}")
            weights[key] = w
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "weights", dict(sorted(weights.items())))

    @classmethod
    def from_edges(cls, labels: Iterable[str], edges: Iterable, weight=1) -> "WeightedGraph":
        """Build from ``(a, b)`` or ``(a, b, w)`` tuples of indices or labels."""
        labels = tuple(labels)
        index = {lab: i for i, lab in enumerate(labels)}
        weights = {}
        for item in edges:
            a, b = item[0], item[1]
            w = item[2] if len(item) > 2 else weight
            a = index[a] if isinstance(a, str) else a
            b = index[b] if isinstance(b, str) else b
            key = edge_key(a, b)
            if key in weights:
                raise ValueError(f"multi-edge between {labels[a]} and {labels[b]}")
            weights[key] = w
        return cls(labels, weights)

    @property
    def vertex_count(self) -> int:
        return len(self.labels)

    @property
    def edges(self) -> tuple[Edge, ...]:
        return tuple(self.weights)

    def weight(self, a: int, b: int) -> Fraction:
        return self.weights[edge_key(a, b)]

    def has_edge(self, a: int, b: int) -> bool:
        return edge_key(a, b) in self.weights

    @cached_property
    def adjacency(self) -> tuple[tuple[int, ...], ...]:
        adj: list[list[int]] = [[] for _ in self.labels]
        for a, b in self.weights:
            adj[a].append(b)
            adj[b].append(a)
        return tuple(tuple(sorted(nb)) for nb in adj)

    @cached_property
    def index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(nb) for nb in self.adjacency]

    def is_connected(self) -> bool:
        return len(_reach(self.adjacency, 0)) == self.vertex_count

    def with_weights(self, weights: Mapping[Edge, Fraction]) -> "WeightedGraph":
        """Same edge set, new weights (keys must match the edge set)."""
        if set(map(lambda e: edge_key(*e), weights)) != set(self.weights):
            raise ValueError("new weights must cover exactly the existing edges")
        return WeightedGraph(self.labels, weights)

    def relabel(self, labels: Iterable[str]) -> "WeightedGraph":
        return WeightedGraph(tuple(labels), self.weights)

    def scaled(self, factor) -> "WeightedGraph":
        factor = as_rational(factor)
        return WeightedGraph(self.labels, {e: w * factor for e, w in self.weights.items()})


def _reach(adjacency, start: int) -> set[int]:
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adjacency[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return seen


@dataclass(frozen=True)
class FamilySpec:
    """A member of one of the graph families: ``gp``, ``kneser`` or ``odd``.

    ``odd`` takes a single parameter ``l`` and stands for Kneser(2l-1, l-1).
    """

    kind: str
    n: int
    k: int = 0

    def __post_init__(self):
        if self.kind == "gp":
            if self.n < 3:
                raise ParameterError(f"GP(n,k) needs n >= 3, got n={self.n}")
            if not (1 <= self.k and 2 * self.k < self.n):
                raise ParameterError(
                    f"GP(n,k) needs 1 <= k < n/2, got ({self.n},{self.k})"
                )
        elif self.kind == "kneser":
            if not (self.k >= 1 and self.n >= 2 * self.k):
                raise ParameterError(
                    f"Kneser(n,k) needs n >= 2k >= 2, got ({self.n},{self.k})"
                )
        elif self.kind == "odd":
            if self.n < 2:
                raise ParameterError(f"odd graph O_l needs l >= 2, got l={self.n}")
        else:
            raise ParameterError(f"unknown family kind {self.kind!r}")

    @classmethod
    def gp(cls, n: int, k: int) -> "FamilySpec":
        return cls("gp", n, k)

    @classmethod
    def kneser(cls, n: int, k: int) -> "FamilySpec":
        return cls("kneser", n, k)

    @classmethod
    def odd(cls, l: int) -> "FamilySpec":
        return cls("odd", l)

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse ``gp:n,k``, ``kneser:n,k`` or ``odd:l``."""
        kind, sep, rest = text.strip().partition(":")
        if not sep:
            raise ParameterError(f"family {text!r} is not of the form kind:params")
        try:
            params = [int(p) for p in rest.split(",")]
        except ValueError:
            raise ParameterError(f"family parameters in {text!r} must be integers") from None
        kind = kind.lower()
        if kind in ("gp", "kneser") and len(params) == 2:
            return cls(kind, *params)
        if kind == "odd" and len(params) == 1:
            return cls("odd", params[0])
        raise ParameterError(f"cannot parse family {text!r}")

    @property
    def kneser_params(self) -> tuple[int, int]:
        """(n, k) of the underlying Kneser graph; only for kneser/odd kinds."""
        if self.kind == "odd":
            return 2 * self.n - 1, self.n - 1
        if self.kind == "kneser":
            return self.n, self.k
        raise ParameterError("not a Kneser family")

    @property
    def is_kneser(self) -> bool:
        return self.kind in ("kneser", "odd")

    @property
    def is_odd_graph(self) -> bool:
        if self.kind == "odd":
            return True
        return self.kind == "kneser" and self.n == 2 * self.k + 1

    @property
    def order(self) -> int:
        """Number of vertices of the family graph."""
        if self.kind == "gp":
            return 2 * self.n
        n, k = self.kneser_params
        return math.comb(n, k)

    @property
    def degree(self) -> int:
        if self.kind == "gp":
            return 3
        n, k = self.kneser_params
        return math.comb(n - k, k)

    def graph(self) -> WeightedGraph:
        """The unit-weight family graph."""
        if self.kind == "gp":
            return generate_generalized_petersen(self.n, self.k)
        return generate_kneser(*self.kneser_params)

    def __str__(self) -> str:
        if self.kind == "odd":
            return f"odd:{self.n}"
        return f"{self.kind}:{self.n},{self.k}"


def generate_generalized_petersen(n: int, k: int) -> WeightedGraph:
    """GP(n,k) in Watkins' form, unit weights.

    Vertices ``u0..u{n-1}`` (indices 0..n-1) then ``v0..v{n-1}`` (n..2n-1).
    """
    if n < 3:
        raise ParameterError(f"GP(n,k) needs n >= 3, got n={n}")
    if not (1 <= k and 2 * k < n):
        raise ParameterError(f"GP(n,k) needs 1 <= k < n/2, got ({n},{k})")
    labels = [f"u{i}" for i in range(n)] + [f"v{i}" for i in range(n)]
    edges = []
    for i in range(n):
        edges.append((i, (i + 1) % n))
        edges.append((i, n + i))
        edges.append((n + i, n + (i + k) % n))
    return WeightedGraph.from_edges(labels, edges)


def subset_label(subset: Iterable[int]) -> str:
    return "{" + ",".join(str(x) for x in sorted(subset)) + "}"


def generate_kneser(n: int, k: int) -> WeightedGraph:
    """KG(n,k): k-subsets of {1..n}, adjacent iff disjoint. Unit weights."""
    if not (k >= 1 and n >= 2 * k):
        raise ParameterError(f"Kneser(n,k) needs n >= 2k >= 2, got ({n},{k})")
    subsets = [frozenset(c) for c in itertools.combinations(range(1, n + 1), k)]
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(subsets)), 2)
        if subsets[i].isdisjoint(subsets[j])
    ]
    return WeightedGraph.from_edges([subset_label(s) for s in subsets], edges)


def generate_odd_graph(l: int) -> WeightedGraph:
    if l < 2:
        raise ParameterError(f"odd graph O_l needs l >= 2, got l={l}")
    return generate_kneser(2 * l - 1, l - 1)


def girth(g: WeightedGraph) -> float | int:
    """Length of a shortest cycle (edge count), ``math.inf`` for forests."""
    adj = g.adjacency
    best = INFINITE
    for root in range(g.vertex_count):
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] + 1 >= best:
                break
            for v in adj[u]:
                if v not in dist:
                    dist[v] = dist[u] + 1
                    parent[v] = u
                    queue.append(v)
                elif parent[u] != v:
                    best = min(best, dist[u] + dist[v] + 1)
    return best


def gp_girth_precondition(n: int, k: int) -> bool:
    """True iff n != 3k, n != 4k and k != 1."""
    FamilySpec.gp(n, k)
    return n != 3 * k and n != 4 * k and k != 1


def cycle_graph(weights: Iterable) -> WeightedGraph:
    """C_m with the given edge weights, edge i joining vertex i and i+1."""
    weights = list(weights)
    m = len(weights)
    labels = [str(i + 1) for i in range(m)]
    return WeightedGraph.from_edges(labels, [(i, (i + 1) % m, w) for i, w in enumerate(weights)])


def path_graph(weights: Iterable) -> WeightedGraph:
    weights = list(weights)
    labels = [str(i + 1) for i in range(len(weights) + 1)]
    return WeightedGraph.from_edges(labels, [(i, i + 1, w) for i, w in enumerate(weights)])
