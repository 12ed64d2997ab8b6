"""Random weightings, matrix mutations, brute-force oracles and fuzz campaigns."""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np

from .characterize import (
    Witness,
    check_scope,
    classify,
    graph_invariants,
    verify_realization,
)
from .graph import FamilySpec, WeightedGraph, as_rational, edge_key
from .isomorphism import are_isomorphic
from .metric import (
    DisconnectedGraphError,
    DistanceMatrix,
    all_pairs_distances,
    is_indecomposable,
)

ORACLE_MAX_VERTICES = 14
MUTATION_FACTORS = (Fraction(1, 4), Fraction(1, 2), Fraction(1))


@dataclass(frozen=True)
class SampleConfig:
    family: FamilySpec
    weight_low: Fraction = Fraction(1)
    weight_high: Fraction = Fraction(2)
    denominator_grid: int = 1000
    seed: int = 0
    require_useful: bool = True

    def __post_init__(self):
        low, high = as_rational(self.weight_low), as_rational(self.weight_high)
        object.__setattr__(self, "weight_low", low)
        object.__setattr__(self, "weight_high", high)
        if not 0 < low < high:
            raise ValueError(f"need 0 < weight_low < weight_high, got [{low}, {high})")
        if self.denominator_grid < 1:
            raise ValueError("denominator_grid must be a positive integer")
        if not 0 <= self.seed < 2**64:
            raise ValueError("seed must be a 64-bit unsigned integer")
        if self.require_useful and high > 2 * low:
            raise ValueError("every-edge-useful sampling needs weight_high <= 2 * weight_low")
        if not self._grid():
            raise ValueError(f"no multiple of 1/{self.denominator_grid} lies in [{low}, {high})")

    def _grid(self) -> range:
        q = self.denominator_grid
        lo = math.ceil(self.weight_low * q)
        hi = math.ceil(self.weight_high * q)
        return range(lo, hi)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """Independent stream per (master seed, trial index)."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial,)))


def sample_weights(cfg: SampleConfig, rng: np.random.Generator | None = None) -> WeightedGraph:
    """Family graph with i.i.d. weights from the grid {p/q} in [low, high)."""
    rng = rng if rng is not None else trial_rng(cfg.seed, 0)
    base = cfg.family.graph()
    grid = cfg._grid()
    draws = rng.integers(grid.start, grid.stop, size=len(base.weights))
    q = cfg.denominator_grid
    return base.with_weights({e: Fraction(int(p), q) for e, p in zip(base.weights, draws)})


def mutate_matrix(d: DistanceMatrix, seed: int) -> DistanceMatrix:
    """Perturb one symmetric off-diagonal pair by +-{1/4, 1/2, 1} of its value."""
    if d.dimension < 2:
        raise ValueError("need dimension >= 2 to mutate")
    rng = np.random.default_rng(np.random.SeedSequence(seed))
    while True:
        i, j = sorted(int(x) for x in rng.choice(d.dimension, size=2, replace=False))
        factor = MUTATION_FACTORS[int(rng.integers(len(MUTATION_FACTORS)))]
        sign = 1 if rng.integers(2) else -1
        new = d[i, j] + sign * factor * d[i, j]
        if new > 0:
            return d.with_entry(i, j, new)


# ---------------------------------------------------------------- oracles


def all_simple_paths(g: WeightedGraph, i: int, j: int):
    """Every simple i-j path as a vertex tuple (exhaustive DFS)."""
    stack = [(i, (i,))]
    while stack:
        v, path = stack.pop()
        if v == j:
            yield path
            continue
        for u in g.adjacency[v]:
            if u not in path:
                stack.append((u, path + (u,)))


def _path_weight(g: WeightedGraph, path) -> Fraction:
    return sum((g.weight(a, b) for a, b in zip(path, path[1:])), Fraction(0))


def _minimal_path_edge_sets(g: WeightedGraph) -> list[list[set]]:
    if g.vertex_count > ORACLE_MAX_VERTICES:
        raise ValueError(f"exhaustive oracle limited to {ORACLE_MAX_VERTICES} vertices")
    out = []
    for i, j in itertools.combinations(range(g.vertex_count), 2):
        paths = list(all_simple_paths(g, i, j))
        if not paths:
            raise DisconnectedGraphError(g.labels[i], g.labels[j])
        weights = [_path_weight(g, p) for p in paths]
        best = min(weights)
        out.append([{edge_key(a, b) for a, b in zip(p, p[1:])} for p, w in zip(paths, weights) if w == best])
    return out


def oracle_useful_edge(g: WeightedGraph, e, _minimal=None) -> bool:
    """Ground truth: some pair has all of its minimum simple paths through e."""
    e = edge_key(*e)
    minimal = _minimal if _minimal is not None else _minimal_path_edge_sets(g)
    return any(all(e in s for s in paths) for paths in minimal)


def oracle_useful_edges(g: WeightedGraph) -> dict:
    minimal = _minimal_path_edge_sets(g)
    return {e: oracle_useful_edge(g, e, minimal) for e in g.weights}


def oracle_distance_floyd(g: WeightedGraph) -> DistanceMatrix:
    m = g.vertex_count
    dist: list[list[Fraction | None]] = [[None] * m for _ in range(m)]
    for i in range(m):
        dist[i][i] = Fraction(0)
    for (a, b), w in g.weights.items():
        dist[a][b] = dist[b][a] = w
    for k in range(m):
        dk = dist[k]
        for i in range(m):
            dik = dist[i][k]
            if dik is None:
                continue
            di = dist[i]
            for j in range(m):
                if dk[j] is None:
                    continue
                cand = dik + dk[j]
                if di[j] is None or cand < di[j]:
                    di[j] = cand
    for i, j in itertools.combinations(range(m), 2):
        if dist[i][j] is None:
            raise DisconnectedGraphError(g.labels[i], g.labels[j])
    return DistanceMatrix(g.labels, dist)


def definitional_h_edges(d: DistanceMatrix) -> set:
    """Indecomposable pairs by the textbook triple loop over Fractions."""
    return {(i, j) for i, j in itertools.combinations(range(d.dimension), 2) if is_indecomposable(d, i, j)}


def recheck_witness(d: DistanceMatrix, f: FamilySpec, cid: str, w: Witness) -> bool:
    """Re-derive a reported violation from the matrix alone."""
    idx = [d.index[lab] for lab in w.labels]
    h = definitional_h_edges(d)
    nbrs = {x: {j for i, j in h if i == x} | {i for i, j in h if j == x} for x in range(d.dimension)}
    if cid == "A":
        (x,) = idx
        return len(nbrs[x]) != f.degree and len(nbrs[x]) == w.values["count"]
    if cid == "B":
        t = len(idx)
        return t in (3, 4) and len(set(idx)) == t and all(
            edge_key(idx[s], idx[(s + 1) % t]) in h for s in range(t)
        )
    if cid == "C":
        if w.kind == "precondition":
            return True
        hg = WeightedGraph(d.labels, {e: d[e] for e in h})
        if "invariant" in w.values:
            name = w.values["invariant"]
            return graph_invariants(hg)[name] == w.values["H"] != graph_invariants(f.graph())[name]
        return are_isomorphic(f.graph(), hg) is None
    if cid == "D":
        x, y = idx
        if edge_key(x, y) in h:
            return False
        hg = WeightedGraph(d.labels, {e: d[e] for e in h})
        try:
            closure = all_pairs_distances(hg)
        except DisconnectedGraphError:
            return w.kind == "disconnected"
        return closure[x, y] != d[x, y] and closure[x, y] == w.values["chain_min"]
    raise ValueError(f"unknown condition {cid!r}")


def failing_witnesses(verdict) -> list[tuple[str, Witness]]:
    return [(c.condition_id, w) for c in verdict.conditions if not c.passes for w in c.witnesses]


# ---------------------------------------------------------------- fuzzing


@dataclass
class FuzzReport:
    trials: int = 0
    passes: int = 0
    failures: list[dict[str, Any]] = field(default_factory=list)
    seed: int = 0
    family: str = ""
    seconds: float = 0.0

    @property
    def ok(self) -> bool:
        return self.passes == self.trials


def run_trial(cfg: SampleConfig, trial: int) -> dict[str, Any] | None:
    """One round trip; None on success, else a failure record."""
    stage = "sample"
    d = None
    try:
        g = sample_weights(cfg, trial_rng(cfg.seed, trial))
        stage = "distances"
        d = all_pairs_distances(g)
        if oracle_distance_floyd(g) != d:
            return _failure(cfg, trial, stage, "Dijkstra and Floyd-Warshall disagree", d)
        stage = "classify"
        verdict = classify(d, cfg.family)
        if not verdict.realizable:
            bad = failing_witnesses(verdict)
            return _failure(cfg, trial, stage, f"not realizable: {bad[:1]}", d)
        stage = "verify"
        report = verify_realization(verdict.realization, d, cfg.family)
        if not report.ok:
            return _failure(cfg, trial, stage, "; ".join(report.problems), d)
        stage = "isomorphism"
        if are_isomorphic(verdict.realization, g, respect_weights=True) is None:
            return _failure(cfg, trial, stage, "realization not weight-isomorphic to sample", d)
    except Exception as exc:  # failures are data here
        return _failure(cfg, trial, stage, f"{type(exc).__name__}: {exc}", d)
    return None


def _failure(cfg, trial, stage, witness, d):
    rec = {"seed": cfg.seed, "trial": trial, "stage": stage, "witness": witness}
    if d is not None:
        rec["matrix"] = {"labels": list(d.labels), "rows": [[str(x) for x in row] for row in d.entries]}
    return rec


def fuzz_roundtrip(cfg: SampleConfig, trials: int, workers: int = 1) -> FuzzReport:
    """Sample -> distances -> classify -> realize -> verify, ``trials`` times.

    Raises TheoremScopeError before any trial for excluded families.  Trial
    ``t`` always uses the stream ``trial_rng(cfg.seed, t)``, so results do
    not depend on ``workers``.
    """
    import time

    check_scope(cfg.family)
    start = time.perf_counter()
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(run_trial, itertools.repeat(cfg, trials), range(trials)))
    else:
        results = [run_trial(cfg, t) for t in range(trials)]
    failures = sorted((r for r in results if r is not None), key=lambda r: r["trial"])
    return FuzzReport(
        trials=trials,
        passes=trials - len(failures),
        failures=failures,
        seed=cfg.seed,
        family=str(cfg.family),
        seconds=time.perf_counter() - start,
    )


def mutation_campaign(cfg: SampleConfig, trials: int) -> dict[str, Any]:
    """Mutate one entry of a valid matrix per trial and classify it.

    Returns counts plus ``findings``: trials where the mutated matrix stayed
    realizable, raised, or produced a witness that does not re-check.
    """
    rejected, findings = 0, []
    for t in range(trials):
        g = sample_weights(cfg, trial_rng(cfg.seed, t))
        d = all_pairs_distances(g)
        md = mutate_matrix(d, seed=int(np.random.SeedSequence(cfg.seed, spawn_key=(t, 1)).generate_state(1)[0]))
        try:
            verdict = classify(md, cfg.family)
        except Exception as exc:
            findings.append({"trial": t, "kind": "exception", "detail": f"{type(exc).__name__}: {exc}"})
            continue
        if verdict.realizable:
            findings.append({"trial": t, "kind": "still-realizable",
                             "detail": "mutated matrix is the distance matrix of another weighting"})
            continue
        checked = failing_witnesses(verdict)
        if checked and all(recheck_witness(md, cfg.family, cid, w) for cid, w in checked):
            rejected += 1
        else:
            findings.append({"trial": t, "kind": "witness-not-rechecked", "detail": repr(checked[:1])})
    return {"trials": trials, "rejected_with_witness": rejected, "findings": findings}


def weight_multiset(g: WeightedGraph) -> Counter:
    return Counter(g.weights.values())
