"""Exhaustive enumeration of the process law for tiny horizons, in exact rationals.

Outcomes are labelled graphs (isomorphic outcomes are kept apart). An
edge-step choosing tips (u, w) and (w, u) yields the same multigraph, so the
two ordered draws form one branch of weight 2 d(u) d(w) / (2s)^2 recorded
with ``u < w``. Statistics here are computed by direct brute force and share
no code with :mod:`pae.observables`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Callable, Iterator

import numpy as np

from pae.growth import ID_DTYPE, GrowthGraph, ModelParams, StepLog, replay

MAX_HORIZON = 9


@dataclass
class WeightedOutcome:
    probability: Fraction
    graph: GrowthGraph
    log: StepLog


def as_fraction(p) -> Fraction:
    if isinstance(p, Fraction):
        q = p
    elif isinstance(p, str):
        q = Fraction(p.strip())
    else:
        q = Fraction(p).limit_denominator(10**12) if isinstance(p, float) else Fraction(p)
    if not 0 <= q <= 1:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    return q


def _check_horizon(t: int) -> None:
    if not 1 <= t <= MAX_HORIZON:
        raise ValueError(f"enumeration horizon must be in [1, {MAX_HORIZON}], got {t}")


def _walk(t: int, p: Fraction) -> Iterator[tuple[Fraction, list[int], int, list[tuple]]]:
    """Depth-first over all outcomes: yields (probability, endpoints, n, steps).

    The yielded lists are reused by the walk; copy them if they must outlive the step.
    """
    q = 1 - p
    endpoints = [1, 1]
    deg = [0, 2]
    steps: list[tuple] = []

    def rec(s: int, n: int, weight: Fraction):
        if s == t:
            yield weight, endpoints, n, steps
            return
        mass = 2 * s
        if p:
            for u in range(1, n + 1):
                w = weight * p * Fraction(deg[u], mass)
                endpoints.extend((u, n + 1))
                deg[u] += 1
                deg.append(1)
                steps.append(("V", u, None))
                yield from rec(s + 1, n + 1, w)
                steps.pop()
                deg.pop()
                deg[u] -= 1
                del endpoints[-2:]
        if q:
            sq = mass * mass
            for u in range(1, n + 1):
                for v in range(u, n + 1):
                    mult = 1 if u == v else 2
                    w = weight * q * Fraction(mult * deg[u] * deg[v], sq)
                    endpoints.extend((u, v))
                    deg[u] += 1
                    deg[v] += 1
                    steps.append(("E", u, v))
                    yield from rec(s + 1, n, w)
                    steps.pop()
                    deg[u] -= 1
                    deg[v] -= 1
                    del endpoints[-2:]

    yield from rec(1, 1, Fraction(1))


def enumerate_outcomes(t: int, p) -> Iterator[WeightedOutcome]:
    """Every outcome of G_t with its exact probability, in canonical depth-first order."""
    _check_horizon(t)
    p = as_fraction(p)
    params = ModelParams(float(p), t, 0)
    for weight, _, _, steps in _walk(t, p):
        kinds = np.array([1 if k == "V" else 0 for k, _, _ in steps], dtype=np.uint8)
        first = np.array([a for _, a, _ in steps], dtype=ID_DTYPE)
        second = np.array([b or 0 for _, _, b in steps], dtype=ID_DTYPE)
        log = StepLog(params, kinds, first, second)
        yield WeightedOutcome(weight, replay(log), log)


# -- brute-force statistics on endpoint lists --------------------------------

def _adjacency(endpoints: list[int], n: int) -> list[set[int]]:
    adj = [set() for _ in range(n + 1)]
    for a, b in zip(endpoints[0::2], endpoints[1::2]):
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def _n_vertices(endpoints, n):
    return n


def _degree_vertex1(endpoints, n):
    return endpoints.count(1)


def _triangles(endpoints, n):
    adj = _adjacency(endpoints, n)
    return sum(1 for a, b, c in combinations(range(1, n + 1), 3)
               if b in adj[a] and c in adj[a] and c in adj[b])


def _cherries_simple(endpoints, n):
    adj = _adjacency(endpoints, n)
    return sum(len(s) * (len(s) - 1) // 2 for s in adj)


def _cherries_multi(endpoints, n):
    return sum(d * (d - 1) // 2 for d in (endpoints.count(v) for v in range(1, n + 1)))


def _clique_number(endpoints, n):
    adj = _adjacency(endpoints, n)
    for size in range(n, 1, -1):
        for sub in combinations(range(1, n + 1), size):
            if all(b in adj[a] for a, b in combinations(sub, 2)):
                return size
    return 1


def _gamma1(endpoints, n):
    return len(_adjacency(endpoints, n)[1])


STATISTICS: dict[str, Callable[[list[int], int], int]] = {
    "N": _n_vertices,
    "d1": _degree_vertex1,
    "triangles": _triangles,
    "cherries_simple": _cherries_simple,
    "cherries_multi": _cherries_multi,
    "clique": _clique_number,
    "gamma1": _gamma1,
}


def exact_expectations(t: int, p, statistics) -> dict[str, Fraction]:
    """Exact E[statistic(G_t)] for several statistics in one enumeration pass."""
    _check_horizon(t)
    names = list(statistics)
    for name in names:
        if name not in STATISTICS:
            raise ValueError(f"unknown statistic {name!r}; choose from {sorted(STATISTICS)}")
    funcs = [STATISTICS[name] for name in names]
    totals = [Fraction(0)] * len(names)
    for weight, endpoints, n, _ in _walk(t, as_fraction(p)):
        for k, f in enumerate(funcs):
            value = f(endpoints, n)
            if value:
                totals[k] += weight * value
    return dict(zip(names, totals))


def exact_expectation(t: int, p, statistic: str) -> Fraction:
    return exact_expectations(t, p, [statistic])[statistic]


def total_mass(t: int, p) -> Fraction:
    _check_horizon(t)
    return sum((w for w, *_ in _walk(t, as_fraction(p))), Fraction(0))


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"
