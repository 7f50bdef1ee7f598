"""Preferential attachment with edge-steps: trajectory generation and replay.

Randomness contract
-------------------
A trajectory with seed ``s`` consumes the stream of doubles produced by
``numpy.random.Generator(numpy.random.PCG64(s)).random()``. Step ``t -> t+1``
takes one draw ``u`` and performs a vertex-step iff ``u < p``. A vertex-step
then takes one draw for its target, an edge-step takes two draws, first tip
then second tip. A PA draw ``v`` selects ``endpoints[floor(v * 2t)]`` of the
pre-step graph.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, NamedTuple

import numpy as np

from pae import _kernels

ID_DTYPE = np.int32
_CHUNK = 1 << 20


@dataclass(frozen=True)
class ModelParams:
    p: float
    t_max: int
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {self.p}")
        if int(self.t_max) < 1:
            raise ValueError(f"t_max must be >= 1, got {self.t_max}")
        if not 0 <= int(self.seed) < 2**64:
            raise ValueError(f"seed must be an unsigned 64-bit integer, got {self.seed}")


def derive_seed(master_seed: int, *indices: int) -> int:
    """Per-replica seed: first 64-bit word of ``SeedSequence([master, *indices])``.

    Order independent, so cells can be scheduled in any order.
    """
    ss = np.random.SeedSequence([int(master_seed), *(int(i) for i in indices)])
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed)))


class StepRecord(NamedTuple):
    kind: str  # "V" or "E"
    first: int
    second: int | None


@dataclass(eq=False)
class StepLog:
    """Replayable record of steps 2..t.

    ``kinds[k]`` is 1 for a vertex-step and 0 for an edge-step at step
    ``s = k + 2``; ``second[k]`` is 0 for vertex-steps.
    """

    params: ModelParams
    kinds: np.ndarray
    first: np.ndarray
    second: np.ndarray

    @property
    def t(self) -> int:
        return len(self.kinds) + 1

    def __len__(self) -> int:
        return len(self.kinds)

    def records(self) -> Iterator[StepRecord]:
        for kind, a, b in zip(self.kinds.tolist(), self.first.tolist(), self.second.tolist()):
            if kind:
                yield StepRecord("V", a, None)
            else:
                yield StepRecord("E", a, b)

    def __eq__(self, other):
        if not isinstance(other, StepLog):
            return NotImplemented
        return (self.params == other.params
                and np.array_equal(self.kinds, other.kinds)
                and np.array_equal(self.first, other.first)
                and np.array_equal(self.second, other.second))


class GrowthGraph:
    """The evolving multigraph G_t.

    Vertex ids are ``1..n_vertices`` in birth order. ``degree`` and
    ``birth_step`` are indexed by vertex id (slot 0 is unused and zero).
    A loop contributes 2 to the degree of its vertex.
    """

    def __init__(self, capacity: int = 1, params: ModelParams | None = None):
        capacity = max(int(capacity), 1)
        self.params = params
        self.t = 1
        self.n_vertices = 1
        self._endpoints = np.zeros(2 * capacity, dtype=ID_DTYPE)
        self._degree = np.zeros(capacity + 1, dtype=np.int64)
        self._birth = np.zeros(capacity + 1, dtype=np.int64)
        self._endpoints[:2] = 1
        self._degree[1] = 2
        self._birth[1] = 1
        self._adjacency = None

    # -- views -------------------------------------------------------------
    @property
    def endpoints(self) -> np.ndarray:
        return self._endpoints[: 2 * self.t]

    @property
    def degree(self) -> np.ndarray:
        return self._degree[: self.n_vertices + 1]

    @property
    def birth_step(self) -> np.ndarray:
        return self._birth[: self.n_vertices + 1]

    @property
    def n_edges(self) -> int:
        return self.t

    def degree_of(self, v: int) -> int:
        self._check_vertex(v)
        return int(self._degree[v])

    def _check_vertex(self, v: int) -> None:
        if not 1 <= v <= self.n_vertices:
            raise KeyError(f"vertex {v} is not alive (graph has {self.n_vertices} vertices)")

    # -- simple view -------------------------------------------------------
    def simple_adjacency(self) -> tuple[np.ndarray, np.ndarray]:
        """CSR ``(indptr, indices)`` of the simple view, rows indexed by vertex id.

        Parallel edges are collapsed and loops dropped; each row is sorted.
        """
        if self._adjacency is None or self._adjacency[0] != self.t:
            self._adjacency = (self.t, *_simple_csr(self.endpoints, self.n_vertices))
        return self._adjacency[1], self._adjacency[2]

    def neighbors(self, v: int) -> np.ndarray:
        self._check_vertex(v)
        indptr, indices = self.simple_adjacency()
        return indices[indptr[v]: indptr[v + 1]]

    def neighbor_sets(self) -> list[set[int]]:
        indptr, indices = self.simple_adjacency()
        return [set(indices[indptr[v]: indptr[v + 1]].tolist()) for v in range(self.n_vertices + 1)]

    # -- construction helpers ----------------------------------------------
    def _ensure_capacity(self, t_needed: int) -> None:
        cap = len(self._degree) - 1
        if t_needed <= cap:
            return
        new_cap = max(t_needed, 2 * cap)
        self._endpoints = _grow_array(self._endpoints, 2 * new_cap)
        self._degree = _grow_array(self._degree, new_cap + 1)
        self._birth = _grow_array(self._birth, new_cap + 1)

    def copy(self, capacity: int | None = None) -> "GrowthGraph":
        cap = max(self.t, capacity or self.t)
        g = GrowthGraph.__new__(GrowthGraph)
        g.params = self.params
        g.t = self.t
        g.n_vertices = self.n_vertices
        g._endpoints = np.zeros(2 * cap, dtype=ID_DTYPE)
        g._endpoints[: 2 * self.t] = self.endpoints
        g._degree = np.zeros(cap + 1, dtype=np.int64)
        g._degree[: self.n_vertices + 1] = self.degree
        g._birth = np.zeros(cap + 1, dtype=np.int64)
        g._birth[: self.n_vertices + 1] = self.birth_step
        g._adjacency = None
        return g

    @classmethod
    def from_endpoints(cls, endpoints, params: ModelParams | None = None) -> "GrowthGraph":
        """Rebuild a graph from its endpoint list (validated against the law's support)."""
        log = _log_from_endpoints(np.asarray(endpoints, dtype=ID_DTYPE), params)
        return replay(log)

    @classmethod
    def from_edge_list(cls, edges, n_vertices: int | None = None) -> "GrowthGraph":
        """Arbitrary multigraph on ids ``1..n`` (not necessarily reachable by the process).

        Each edge counts as one step; a vertex is born at the step of its
        first edge, isolated vertices at step 1.
        """
        ep = np.asarray(edges, dtype=ID_DTYPE).reshape(-1)
        if ep.size == 0 or ep.min() < 1:
            raise ValueError("need at least one edge with vertex ids >= 1")
        n = int(max(ep.max(), n_vertices or 0))
        g = cls.__new__(cls)
        g.params = None
        g.t = len(ep) // 2
        g.n_vertices = n
        g._endpoints = ep.copy()
        g._degree = np.bincount(ep, minlength=n + 1).astype(np.int64)
        birth = np.ones(n + 1, dtype=np.int64)
        birth[0] = 0
        ids, first_pos = np.unique(ep, return_index=True)
        birth[ids] = first_pos // 2 + 1
        g._birth = birth
        g._adjacency = None
        return g

    def prefix(self, s: int) -> "GrowthGraph":
        """The graph G_s seen earlier along this trajectory (1 <= s <= t)."""
        if not 1 <= s <= self.t:
            raise ValueError(f"prefix time {s} outside [1, {self.t}]")
        ep = self.endpoints[: 2 * s]
        g = GrowthGraph.__new__(GrowthGraph)
        g.params = self.params
        g.t = s
        g.n_vertices = int(ep.max())
        g._endpoints = ep.copy()
        g._degree = np.bincount(ep, minlength=g.n_vertices + 1).astype(np.int64)
        g._birth = self.birth_step[: g.n_vertices + 1].copy()
        g._adjacency = None
        return g

    def __eq__(self, other):
        if not isinstance(other, GrowthGraph):
            return NotImplemented
        return (self.t == other.t and self.n_vertices == other.n_vertices
                and np.array_equal(self.endpoints, other.endpoints)
                and np.array_equal(self.degree, other.degree)
                and np.array_equal(self.birth_step, other.birth_step))

    def __repr__(self):
        return f"GrowthGraph(t={self.t}, n_vertices={self.n_vertices})"


def _grow_array(arr: np.ndarray, size: int) -> np.ndarray:
    out = np.zeros(size, dtype=arr.dtype)
    out[: len(arr)] = arr
    return out


def _simple_csr(endpoints: np.ndarray, n_vertices: int) -> tuple[np.ndarray, np.ndarray]:
    a = endpoints[0::2].astype(np.int64)
    b = endpoints[1::2].astype(np.int64)
    keep = a != b
    lo = np.minimum(a[keep], b[keep])
    hi = np.maximum(a[keep], b[keep])
    width = n_vertices + 1
    keys = np.unique(lo * width + hi)
    lo, hi = keys // width, keys % width
    src = np.concatenate([lo, hi])
    dst = np.concatenate([hi, lo])
    order = np.lexsort((dst, src))
    indptr = np.zeros(width + 1, dtype=np.int64)
    np.cumsum(np.bincount(src, minlength=width), out=indptr[1:])
    return indptr, dst[order]


# -- the process ---------------------------------------------------------------

def init_graph(params: ModelParams | None = None) -> GrowthGraph:
    """G_1: a single vertex carrying one loop."""
    capacity = params.t_max if params is not None else 1
    return GrowthGraph(capacity, params)


def sample_preferential(graph: GrowthGraph, u: float) -> int:
    """Vertex at ``endpoints[floor(u * 2t)]``; exact degree-proportional choice."""
    if not 0.0 <= u < 1.0:
        raise ValueError(f"u must lie in [0, 1), got {u}")
    mass = 2 * graph.t
    return int(graph._endpoints[min(int(u * mass), mass - 1)])


def perform_step(graph: GrowthGraph, is_vertex_step: bool, rng: np.random.Generator) -> StepRecord:
    """Apply one step in place, drawing one uniform per PA sample from ``rng``."""
    graph._ensure_capacity(graph.t + 1)
    t = graph.t
    if is_vertex_step:
        target = sample_preferential(graph, rng.random())
        graph.n_vertices += 1
        new = graph.n_vertices
        graph._endpoints[2 * t: 2 * t + 2] = (target, new)
        graph._degree[target] += 1
        graph._degree[new] = 1
        graph._birth[new] = t + 1
        record = StepRecord("V", target, None)
    else:
        # both tips are drawn from the pre-step graph
        a = sample_preferential(graph, rng.random())
        b = sample_preferential(graph, rng.random())
        graph._endpoints[2 * t: 2 * t + 2] = (a, b)
        graph._degree[a] += 1
        graph._degree[b] += 1
        record = StepRecord("E", a, b)
    graph.t = t + 1
    return record


def _advance(graph: GrowthGraph, t_stop: int, p: float, rng: np.random.Generator,
             kinds: np.ndarray, first: np.ndarray, second: np.ndarray) -> None:
    graph._ensure_capacity(t_stop)
    t, n = graph.t, graph.n_vertices
    buf = rng.random(min(_CHUNK, 3 * (t_stop - t) + 3))
    pos = 0
    while True:
        t, n, pos = _kernels.grow(graph._endpoints, graph._degree, graph._birth,
                                  kinds, first, second, t, n, t_stop, float(p), buf, pos)
        if t >= t_stop:
            break
        buf = np.concatenate([buf[pos:], rng.random(_CHUNK)])
        pos = 0
    graph.t, graph.n_vertices = int(t), int(n)
    graph._adjacency = None


def generate(params: ModelParams) -> tuple[GrowthGraph, StepLog]:
    """Run steps 2..t_max from G_1 with the seeded stream described above."""
    graph = init_graph(params)
    n_rec = params.t_max - 1
    kinds = np.zeros(n_rec, dtype=np.uint8)
    first = np.zeros(n_rec, dtype=ID_DTYPE)
    second = np.zeros(n_rec, dtype=ID_DTYPE)
    if n_rec:
        _advance(graph, params.t_max, params.p, make_rng(params.seed), kinds, first, second)
    return graph, StepLog(params, kinds, first, second)


def continue_graph(graph: GrowthGraph, t_stop: int, p: float, seed: int) -> GrowthGraph:
    """Fresh continuation of a frozen graph to ``t_stop``; ``graph`` is untouched."""
    if t_stop < graph.t:
        raise ValueError(f"cannot continue backwards from t={graph.t} to {t_stop}")
    g = graph.copy(capacity=t_stop)
    n_rec = t_stop - 1
    kinds = np.zeros(n_rec, dtype=np.uint8)
    first = np.zeros(n_rec, dtype=ID_DTYPE)
    second = np.zeros(n_rec, dtype=ID_DTYPE)
    if t_stop > g.t:
        _advance(g, t_stop, p, make_rng(seed), kinds, first, second)
    return g


def replay(log: StepLog) -> GrowthGraph:
    """Rebuild the graph a StepLog describes, checking every referenced id is alive."""
    t = log.t
    graph = GrowthGraph(t, log.params)
    t_end, n, bad = _kernels.replay(graph._endpoints, graph._degree, graph._birth,
                                    np.ascontiguousarray(log.kinds, dtype=np.uint8),
                                    np.ascontiguousarray(log.first, dtype=ID_DTYPE),
                                    np.ascontiguousarray(log.second, dtype=ID_DTYPE), t)
    if bad >= 0:
        raise ValueError(f"step {bad + 2} references a vertex that is not alive "
                         f"(only {n} vertices exist)")
    graph.t, graph.n_vertices = int(t_end), int(n)
    return graph


def log_from_graph(graph: GrowthGraph) -> StepLog:
    """Recover the StepLog of a graph; the endpoint list determines it uniquely."""
    return _log_from_endpoints(graph.endpoints, graph.params)


def _log_from_endpoints(endpoints: np.ndarray, params: ModelParams | None) -> StepLog:
    if len(endpoints) < 2 or len(endpoints) % 2 or endpoints[0] != 1 or endpoints[1] != 1:
        raise ValueError("endpoint list must start with the loop [1, 1] and have even length")
    t = len(endpoints) // 2
    a = endpoints[2::2]
    b = endpoints[3::2]
    prev_max = np.maximum.accumulate(np.concatenate([[1], b[:-1]])) if t > 1 else np.zeros(0)
    kinds = (b > prev_max).astype(np.uint8)
    second = np.where(kinds == 1, 0, b).astype(ID_DTYPE)
    if params is None:
        params = ModelParams(p=0.0, t_max=t, seed=0)
    elif params.t_max != t:
        params = ModelParams(params.p, t, params.seed)
    return StepLog(params, kinds, a.astype(ID_DTYPE), second)
