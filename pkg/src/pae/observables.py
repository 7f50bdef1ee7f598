"""Graph statistics: cherries, triangles, transitivity, degrees, clique bounds."""

from __future__ import annotations

import time
from dataclasses import astuple, dataclass, fields
from typing import NamedTuple

import numpy as np

from pae import _kernels
from pae.clique import DEFAULT_BUDGET, DEFAULT_POOL, clique_exact, clique_greedy
from pae.growth import GrowthGraph, StepLog, replay
from pae.theory import phi_table

CSV_HEADER = ("p,seed,t,n_vertices,n_edges,max_degree,cherries_simple,cherries_multi,"
              "triangles,tau,clique_lb,clique_exact,gamma_t_1,wall_millis")


@dataclass
class ObservableRecord:
    p: float
    seed: int
    t: int
    n_vertices: int
    n_edges: int
    max_degree: int
    cherries_simple: int
    cherries_multi: int
    triangles: int | None
    tau: float | None
    clique_lb: int | None
    clique_exact: int | None
    gamma_t_1: int
    wall_millis: float

    @property
    def key(self) -> tuple[float, int, int]:
        return (self.p, self.seed, self.t)

    def to_row(self) -> list[str]:
        return ["" if v is None else repr(v) if isinstance(v, float) else str(v)
                for v in astuple(self)]

    @classmethod
    def from_row(cls, row: dict[str, str]) -> "ObservableRecord":
        kwargs = {}
        for f in fields(cls):
            raw = row[f.name]
            if raw == "":
                kwargs[f.name] = None
            elif f.name in ("p", "tau", "wall_millis"):
                kwargs[f.name] = float(raw)
            else:
                kwargs[f.name] = int(raw)
        return cls(**kwargs)


def distinct_neighbors(graph: GrowthGraph, j: int) -> int:
    """Gamma_t(j): neighbours of j in the simple view."""
    return len(graph.neighbors(j))


def simple_degrees(graph: GrowthGraph) -> np.ndarray:
    indptr, _ = graph.simple_adjacency()
    return np.diff(indptr)


def cherries(graph: GrowthGraph, mode: str = "simple") -> int:
    """Paths of length two centred anywhere.

    ``simple`` counts pairs of distinct neighbours; ``multi`` uses
    sum C(d(v), 2) with loop-inflated multidegrees.
    """
    if mode == "simple":
        d = simple_degrees(graph)
    elif mode == "multi":
        d = graph.degree
    else:
        raise ValueError(f"mode must be 'simple' or 'multi', got {mode!r}")
    d = d.astype(np.int64)
    return int(np.sum(d * (d - 1) // 2))


def count_triangles(graph: GrowthGraph) -> int:
    """Triangles of the simple view (multiplicities ignored, loops never count)."""
    indptr, indices = graph.simple_adjacency()
    deg = np.diff(indptr)
    # rank by (simple degree, id): each vertex has O(sqrt(m)) higher-ranked neighbours
    rank = np.empty(len(deg), dtype=np.int64)
    rank[np.lexsort((np.arange(len(deg)), deg))] = np.arange(len(deg))
    return int(_kernels.oriented_triangles(indptr, indices, rank))


def global_clustering(graph: GrowthGraph, triangles: int | None = None) -> float | None:
    """3 * triangles / simple cherries, or None when there are no cherries."""
    wedges = cherries(graph, "simple")
    if wedges == 0:
        return None
    if triangles is None:
        triangles = count_triangles(graph)
    return 3.0 * triangles / wedges


def max_degree(graph: GrowthGraph) -> tuple[int, int]:
    """(vertex, multidegree) of the maximum; earliest vertex wins ties."""
    deg = graph.degree
    v = int(np.argmax(deg[1:])) + 1
    return v, int(deg[v])


def degree_histogram(graph: GrowthGraph) -> np.ndarray:
    """``hist[d]`` = number of vertices of multidegree ``d``."""
    return np.bincount(graph.degree[1:])


class DegreeTrajectory(NamedTuple):
    steps: np.ndarray
    values: np.ndarray
    running_sup: np.ndarray


def degree_path(source: StepLog | GrowthGraph, i: int) -> tuple[np.ndarray, np.ndarray]:
    """Steps s = birth(i)..t and the multidegree d_s(i) along them."""
    graph = replay(source) if isinstance(source, StepLog) else source
    if not 1 <= i <= graph.n_vertices:
        raise KeyError(f"vertex {i} is never born in this trajectory")
    born = int(graph.birth_step[i])
    hits = np.cumsum(graph.endpoints == i)  # hits[2s-1] = d_s(i)
    steps = np.arange(born, graph.t + 1)
    return steps, hits[2 * steps - 1]


def normalized_degree_trajectory(source: StepLog | GrowthGraph, i: int,
                                 p: float | None = None) -> DegreeTrajectory:
    """d_s(i) / phi(s) for s from the birth of i up to t, with its running maximum."""
    if p is None:
        params = source.params
        if params is None:
            raise ValueError("p is required when the source carries no ModelParams")
        p = params.p
    steps, deg = degree_path(source, i)
    values = deg / phi_table(int(steps[-1]), p)[steps]
    return DegreeTrajectory(steps, values, np.maximum.accumulate(values))


def measure(graph: GrowthGraph, *, p: float | None = None, seed: int | None = None,
            triangles: bool = True, clique_pool_k: int | None = DEFAULT_POOL,
            exact_clique: bool = False, clique_budget: int = DEFAULT_BUDGET) -> ObservableRecord:
    """Compute one ObservableRecord for ``graph``."""
    start = time.perf_counter()
    params = graph.params
    if p is None:
        p = params.p if params is not None else float("nan")
    if seed is None:
        seed = params.seed if params is not None else 0
    tri = count_triangles(graph) if triangles else None
    wedges = cherries(graph, "simple")
    tau = None
    if tri is not None and wedges > 0:
        tau = 3.0 * tri / wedges
    lb = clique_greedy(graph, clique_pool_k, clique_budget).size if clique_pool_k else None
    exact = None
    if exact_clique:
        res = clique_exact(graph, clique_budget)
        exact = res.size if res.exact else None
        if lb is not None and res.size > lb:
            lb = res.size
    return ObservableRecord(
        p=float(p), seed=int(seed), t=graph.t, n_vertices=graph.n_vertices,
        n_edges=graph.n_edges, max_degree=max_degree(graph)[1],
        cherries_simple=wedges, cherries_multi=cherries(graph, "multi"),
        triangles=tri, tau=tau, clique_lb=lb, clique_exact=exact,
        gamma_t_1=distinct_neighbors(graph, 1),
        wall_millis=round((time.perf_counter() - start) * 1000.0, 3),
    )
