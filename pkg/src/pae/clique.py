"""Maximum clique of the simple view: degeneracy ordering + colouring bound."""

from __future__ import annotations

import heapq
from collections.abc import Mapping
from typing import Iterable, NamedTuple

import numpy as np

from pae.growth import GrowthGraph

DEFAULT_BUDGET = 2_000_000
DEFAULT_POOL = 200


class CliqueResult(NamedTuple):
    size: int
    members: tuple[int, ...]
    exact: bool
    expansions: int


class _BudgetExceeded(Exception):
    pass


def simple_adjacency(graph) -> dict[int, set[int]]:
    """Adjacency sets of the simple view for a GrowthGraph or a mapping of neighbour lists."""
    if isinstance(graph, GrowthGraph):
        sets = graph.neighbor_sets()
        return {v: sets[v] for v in range(1, graph.n_vertices + 1)}
    adj: dict[int, set[int]] = {v: set() for v in graph}
    for v, nbrs in graph.items():
        for w in nbrs:
            if w == v:
                continue
            adj[v].add(w)
            adj.setdefault(w, set()).add(v)
    return adj


def degeneracy_order(adj: Mapping[int, set[int]]) -> tuple[list[int], dict[int, int]]:
    """Smallest-last peeling order and core numbers. Ties break on vertex id."""
    deg = {v: len(n) for v, n in adj.items()}
    heap = [(d, v) for v, d in deg.items()]
    heapq.heapify(heap)
    removed: set[int] = set()
    order: list[int] = []
    core: dict[int, int] = {}
    k = 0
    while heap:
        d, v = heapq.heappop(heap)
        if v in removed or d != deg[v]:
            continue
        k = max(k, d)
        core[v] = k
        order.append(v)
        removed.add(v)
        for w in adj[v]:
            if w not in removed:
                deg[w] -= 1
                heapq.heappush(heap, (deg[w], w))
    return order, core


def _colour_sort(cands: list[int], adj) -> tuple[list[int], list[int]]:
    classes: list[list[int]] = []
    for v in cands:
        nv = adj[v]
        for cls in classes:
            if nv.isdisjoint(cls):
                cls.append(v)
                break
        else:
            classes.append([v])
    order, bounds = [], []
    for c, cls in enumerate(classes, start=1):
        order.extend(cls)
        bounds.extend([c] * len(cls))
    return order, bounds


class _Search:
    def __init__(self, adj, budget):
        self.adj = adj
        self.budget = budget
        self.expansions = 0
        self.best: tuple[int, ...] = ()

    def expand(self, clique: list[int], cands: list[int]) -> None:
        self.expansions += 1
        if self.budget is not None and self.expansions > self.budget:
            raise _BudgetExceeded
        order, bounds = _colour_sort(cands, self.adj)
        remaining = set(order)
        for idx in range(len(order) - 1, -1, -1):
            if len(clique) + bounds[idx] <= len(self.best):
                return
            v = order[idx]
            nv = self.adj[v]
            new_cands = [w for w in order[:idx] if w in remaining and w in nv]
            clique.append(v)
            if new_cands:
                self.expand(clique, new_cands)
            elif len(clique) > len(self.best):
                self.best = tuple(sorted(clique))
            clique.pop()
            remaining.discard(v)


def max_clique(adj: Mapping[int, set[int]], budget: int | None = DEFAULT_BUDGET) -> CliqueResult:
    if not adj:
        return CliqueResult(0, (), True, 0)
    order, core = degeneracy_order(adj)
    position = {v: i for i, v in enumerate(order)}
    search = _Search(adj, budget)
    search.best = (order[-1],)
    exact = True
    try:
        # densest part of the ordering first, so a large incumbent appears early
        for v in reversed(order):
            if core[v] + 1 <= len(search.best):
                continue
            later = [w for w in adj[v] if position[w] > position[v]]
            if len(later) + 1 <= len(search.best):
                continue
            later.sort(key=lambda w: (-len(adj[w]), w))
            search.expand([v], later)
    except _BudgetExceeded:
        exact = False
    return CliqueResult(len(search.best), search.best, exact, min(search.expansions, budget or search.expansions))


def clique_exact(graph, budget: int | None = DEFAULT_BUDGET) -> CliqueResult:
    """Clique number of the simple view.

    ``exact`` is False when the node-expansion ``budget`` ran out; ``size`` is
    then the largest clique found so far, a lower bound.
    """
    return max_clique(simple_adjacency(graph), budget)


def top_degree_pool(graph, k: int) -> list[int]:
    """The ``k`` highest-multidegree vertices, ties broken by earlier birth."""
    if isinstance(graph, GrowthGraph):
        deg = graph.degree[1:]
        order = np.lexsort((np.arange(1, graph.n_vertices + 1), -deg))
        return (order[:k] + 1).tolist()
    adj = simple_adjacency(graph)
    return sorted(adj, key=lambda v: (-len(adj[v]), v))[:k]


def induced(adj: Mapping[int, set[int]], vertices: Iterable[int]) -> dict[int, set[int]]:
    keep = set(vertices)
    return {v: adj[v] & keep for v in keep}


def clique_greedy(graph, k: int = DEFAULT_POOL, budget: int | None = DEFAULT_BUDGET) -> CliqueResult:
    """Lower bound on the clique number from the top-``k`` degree pool."""
    if k < 1:
        raise ValueError(f"pool size must be >= 1, got {k}")
    pool = top_degree_pool(graph, k)
    if isinstance(graph, GrowthGraph):
        indptr, indices = graph.simple_adjacency()
        keep = set(pool)
        sub = {v: set(indices[indptr[v]: indptr[v + 1]].tolist()) & keep for v in pool}
    else:
        sub = induced(simple_adjacency(graph), pool)
    return max_clique(sub, budget)
