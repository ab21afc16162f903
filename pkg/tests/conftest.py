"""Shared builders for graphs and local sensitivity instances."""

from __future__ import annotations

import random

from lwdp_triangles import WeightedGraph
from lwdp_triangles.estimators import EstimatorKind
from lwdp_triangles.sensitivity import EdgeLocalView, SmoothSensInstance


def complete_graph(n: int, weight: int = 1) -> WeightedGraph:
    return WeightedGraph(n, [(u, v, weight) for u in range(n) for v in range(u + 1, n)])


def book_graph(k: int, weight: int = 0) -> WeightedGraph:
    """k triangles all sharing the spine edge (0, 1)."""
    edges = [(0, 1, weight)]
    for leaf in range(2, k + 2):
        edges.append((0, leaf, weight))
        edges.append((1, leaf, weight))
    return WeightedGraph(k + 2, edges)


def random_graph(rnd: random.Random, n: int, p: float, wlo: int, whi: int) -> WeightedGraph:
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if rnd.random() < p:
                edges.append((u, v, rnd.randint(wlo, whi)))
    return WeightedGraph(n, edges)


def random_local_instance(
    rnd: random.Random,
    kind: EstimatorKind,
    p: float | None = None,
    *,
    max_degree: int = 12,
    weight_span: int = 10,
    lam_span: int = 5,
    betas: tuple[float, ...] = (0.1, 0.5, 1.0),
) -> SmoothSensInstance:
    """A node's local view with a random star of incident edges and triangles.

    Every triangle couples two incident edges through one shared noisy
    non-incident weight, exactly as the protocol would deliver it.
    """
    d = rnd.randint(2, max_degree)
    lam = rnd.randint(-lam_span, lam_span)
    beta = rnd.choice(betas)
    weights = [rnd.randint(-weight_span, weight_span) for _ in range(d)]
    pair_count = rnd.randint(0, min(12, d * (d - 1) // 2))
    chosen: set[tuple[int, int]] = set()
    while len(chosen) < pair_count:
        i, j = rnd.sample(range(d), 2)
        chosen.add((min(i, j), max(i, j)))
    sums: dict[int, list[int]] = {i: [] for i in range(d)}
    for i, j in sorted(chosen):
        shared_noisy = rnd.randint(-weight_span, weight_span)
        sums[i].append(weights[j] + shared_noisy)
        sums[j].append(weights[i] + shared_noisy)
    views = tuple(EdgeLocalView(weights[i], tuple(sums[i])) for i in range(d))
    return SmoothSensInstance(0, lam, beta, kind, p, views)
