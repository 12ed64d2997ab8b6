"""Exact distance matrices, geodesics, indecomposable entries and useful edges."""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

from .graph import Edge, WeightedGraph, as_rational, edge_key

DEFAULT_GEODESIC_CAP = 10**6


class DisconnectedGraphError(ValueError):
    def __init__(self, a: str, b: str):
        super().__init__(f"graph is disconnected: no path between {a} and {b}")
        self.labels = (a, b)


class GeodesicOverflowError(RuntimeError):
    """More geodesics than the caller's cap; nothing is silently dropped."""


class MatrixValidationError(ValueError):
    def __init__(self, problems: list[str]):
        super().__init__("; ".join(problems))
        self.problems = problems


@dataclass(frozen=True)
class DistanceMatrix:
    """Square matrix of exact rationals indexed by labels.

    Only shape and label uniqueness are enforced at construction so that bad
    input can be loaded and reported; :meth:`validate` checks symmetry, the
    zero diagonal and positivity.
    """

    labels: tuple[str, ...]
    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        labels = tuple(self.labels)
        rows = tuple(tuple(as_rational(x) for x in row) for row in self.entries)
        m = len(labels)
        if len(set(labels)) != m:
            raise ValueError("matrix labels must be unique")
        if len(rows) != m or any(len(r) != m for r in rows):
            raise ValueError(f"matrix must be {m}x{m} to match its {m} labels")
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "entries", rows)

    @property
    def dimension(self) -> int:
        return len(self.labels)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    @cached_property
    def index(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def structural_errors(self) -> list[str]:
        problems = []
        m = self.dimension
        for i in range(m):
            if self.entries[i][i] != 0:
                problems.append(f"nonzero diagonal at ({self.labels[i]},{self.labels[i]})")
            for j in range(i + 1, m):
                a, b = self.entries[i][j], self.entries[j][i]
                if a != b:
                    problems.append(f"not symmetric at ({self.labels[i]},{self.labels[j]}): {a} != {b}")
                if a <= 0 or b <= 0:
                    problems.append(f"non-positive entry at ({self.labels[i]},{self.labels[j]})")
        return problems

    def validate(self) -> "DistanceMatrix":
        problems = self.structural_errors()
        if problems:
            raise MatrixValidationError(problems)
        return self

    @cached_property
    def integer_scale(self) -> int:
        """Least common multiple of all entry denominators."""
        scale = 1
        for row in self.entries:
            for x in row:
                scale = math.lcm(scale, x.denominator)
        return scale

    @cached_property
    def integer_entries(self) -> tuple[tuple[int, ...], ...]:
        """Entries times :attr:`integer_scale`.

        Every comparison used here is homogeneous, so working on these
        integers gives identical verdicts and is much faster.
        """
        scale = self.integer_scale
        return tuple(tuple(x.numerator * (scale // x.denominator) for x in row) for row in self.entries)

    def scaled(self, factor) -> "DistanceMatrix":
        factor = as_rational(factor)
        return DistanceMatrix(self.labels, [[x * factor for x in row] for row in self.entries])

    def permuted(self, perm: Sequence[int]) -> "DistanceMatrix":
        """Matrix whose position ``i`` holds old index ``perm[i]``."""
        return DistanceMatrix(
            [self.labels[p] for p in perm],
            [[self.entries[p][q] for q in perm] for p in perm],
        )

    def with_entry(self, i: int, j: int, value) -> "DistanceMatrix":
        """Copy with the symmetric pair (i,j), (j,i) replaced."""
        rows = [list(r) for r in self.entries]
        rows[i][j] = rows[j][i] = as_rational(value)
        return DistanceMatrix(self.labels, rows)


def dijkstra(g: WeightedGraph, source: int) -> list[Fraction | None]:
    dist: list[Fraction | None] = [None] * g.vertex_count
    dist[source] = Fraction(0)
    heap = [(Fraction(0), source)]
    done = [False] * g.vertex_count
    while heap:
        d, u = heapq.heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for v in g.adjacency[u]:
            nd = d + g.weight(u, v)
            if dist[v] is None or nd < dist[v]:
                dist[v] = nd
                heapq.heappush(heap, (nd, v))
    return dist


def all_pairs_distances(g: WeightedGraph) -> DistanceMatrix:
    """Exact weighted shortest-path distances, one Dijkstra per source."""
    rows = []
    for s in range(g.vertex_count):
        row = dijkstra(g, s)
        for t, x in enumerate(row):
            if x is None:
                raise DisconnectedGraphError(g.labels[s], g.labels[t])
        rows.append(row)
    return DistanceMatrix(g.labels, rows)


def _geodesic_counts(g: WeightedGraph, d: DistanceMatrix) -> list[list[int]]:
    """counts[s][t] = number of s-t geodesics."""
    m = g.vertex_count
    counts = []
    for s in range(m):
        row = d.entries[s]
        c = [0] * m
        c[s] = 1
        for v in sorted(range(m), key=row.__getitem__):
            if v == s:
                continue
            c[v] = sum(c[u] for u in g.adjacency[v] if row[u] + g.weight(u, v) == row[v])
        counts.append(c)
    return counts


def geodesics(
    g: WeightedGraph,
    i: int,
    j: int,
    cap: int = DEFAULT_GEODESIC_CAP,
    d: DistanceMatrix | None = None,
) -> list[tuple[int, ...]]:
    """All minimum-weight i-j paths as vertex tuples, in lexicographic order.

    Raises GeodesicOverflowError if there are more than ``cap``.
    """
    if cap < 1:
        raise ValueError("cap must be at least 1")
    dist = d.entries[i] if d is not None else dijkstra(g, i)
    if dist[j] is None:
        raise DisconnectedGraphError(g.labels[i], g.labels[j])

    # predecessors in the shortest-path DAG rooted at i
    def preds(v):
        return [u for u in g.adjacency[v] if dist[u] is not None and dist[u] + g.weight(u, v) == dist[v]]

    count: dict[int, int] = {i: 1}

    def n_paths(v):
        if v not in count:
            count[v] = sum(n_paths(u) for u in preds(v))
        return count[v]

    total = n_paths(j)
    if total > cap:
        raise GeodesicOverflowError(
            f"{total} geodesics between {g.labels[i]} and {g.labels[j]} exceed cap {cap}"
        )
    out = []

    def expand(v, suffix):
        if v == i:
            out.append((i,) + suffix)
            return
        for u in preds(v):
            expand(u, (v,) + suffix)

    expand(j, ())
    return sorted(out)


def is_indecomposable(d: DistanceMatrix, i: int, j: int) -> bool:
    """D[i,j] < D[i,k] + D[k,j] for every k outside {i, j}."""
    if i == j:
        raise ValueError("indecomposability needs two distinct indices")
    e = d.entries
    return all(e[i][j] < e[i][k] + e[k][j] for k in range(d.dimension) if k != i and k != j)


@dataclass(frozen=True)
class IndecomposabilityProfile:
    base: DistanceMatrix
    h_edges: frozenset[Edge]
    x1: tuple[frozenset[int], ...]

    def graph(self) -> WeightedGraph:
        """H with each edge (i,j) weighted by D[i,j]."""
        return WeightedGraph(self.base.labels, {(i, j): self.base.entries[i][j] for i, j in self.h_edges})

    def degrees(self) -> list[int]:
        return [len(s) for s in self.x1]


def profile(d: DistanceMatrix) -> IndecomposabilityProfile:
    e = d.integer_entries
    m = d.dimension
    h = set()
    for i in range(m):
        ei = e[i]
        for j in range(i + 1, m):
            dij = ei[j]
            ej = e[j]
            if all(dij < ei[k] + ej[k] for k in range(m) if k != i and k != j):
                h.add((i, j))
    x1 = [set() for _ in range(m)]
    for i, j in h:
        x1[i].add(j)
        x1[j].add(i)
    return IndecomposabilityProfile(d, frozenset(h), tuple(frozenset(s) for s in x1))


@dataclass(frozen=True)
class EdgeUsefulness:
    """Useful edges map to a witness pair; useless edges map to None."""

    graph: WeightedGraph
    witnesses: dict[Edge, tuple[int, int] | None] = field(default_factory=dict)

    def is_useful(self, a: int, b: int) -> bool:
        return self.witnesses[edge_key(a, b)] is not None

    @property
    def useful(self) -> list[Edge]:
        return [e for e, w in self.witnesses.items() if w is not None]

    @property
    def useless(self) -> list[Edge]:
        return [e for e, w in self.witnesses.items() if w is None]

    @property
    def all_useful(self) -> bool:
        return all(w is not None for w in self.witnesses.values())


def _pairs_endpoints_first(m: int, a: int, b: int) -> Iterable[tuple[int, int]]:
    yield (a, b)
    for i in range(m):
        for j in range(i + 1, m):
            if (i, j) != (a, b):
                yield (i, j)


def useful_edges(g: WeightedGraph, cap: int = DEFAULT_GEODESIC_CAP) -> EdgeUsefulness:
    """Classify every edge via geodesic counting, no path enumeration.

    Edge (a,b) lies on N[i,a]*N[b,j] of the i-j geodesics when
    D[i,a] + w + D[b,j] == D[i,j] (and symmetrically); it is on all of them
    exactly when that count equals N[i,j].  The endpoint pair is tried first.
    """
    d = all_pairs_distances(g)
    n = _geodesic_counts(g, d)
    m = g.vertex_count
    biggest = max(max(row) for row in n)
    if biggest > cap:
        raise GeodesicOverflowError(f"{biggest} geodesics for a single pair exceed cap {cap}")
    D = d.entries
    out: dict[Edge, tuple[int, int] | None] = {}
    for (a, b), w in g.weights.items():
        witness = None
        for i, j in _pairs_endpoints_first(m, a, b):
            dij = D[i][j]
            through = 0
            if D[i][a] + w + D[b][j] == dij:
                through += n[i][a] * n[b][j]
            if D[i][b] + w + D[a][j] == dij:
                through += n[i][b] * n[a][j]
            if through and through == n[i][j]:
                witness = (i, j)
                break
        out[(a, b)] = witness
    return EdgeUsefulness(g, out)


@dataclass(frozen=True)
class EdgeConsistency:
    edge: Edge
    useful: bool
    indecomposable: bool
    weight: Fraction
    distance: Fraction

    @property
    def agrees(self) -> bool:
        return self.useful == (self.indecomposable and self.weight == self.distance)


@dataclass(frozen=True)
class ConsistencyReport:
    rows: tuple[EdgeConsistency, ...]

    @property
    def agreements(self) -> int:
        return sum(r.agrees for r in self.rows)

    @property
    def counterexamples(self) -> list[EdgeConsistency]:
        return [r for r in self.rows if not r.agrees]

    @property
    def full_agreement(self) -> bool:
        return not self.counterexamples


def usefulness_indecomposability_consistency(
    g: WeightedGraph, cap: int = DEFAULT_GEODESIC_CAP
) -> ConsistencyReport:
    """Per edge: is "useful" the same as "indecomposable with w(e) = D[i,j]"?"""
    d = all_pairs_distances(g)
    use = useful_edges(g, cap)
    rows = []
    for (a, b), w in g.weights.items():
        rows.append(
            EdgeConsistency(
                edge=(a, b),
                useful=use.is_useful(a, b),
                indecomposable=is_indecomposable(d, a, b),
                weight=w,
                distance=d.entries[a][b],
            )
        )
    return ConsistencyReport(tuple(rows))
