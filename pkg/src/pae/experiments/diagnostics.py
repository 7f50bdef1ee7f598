"""Martingale and degree-tail diagnostics for d_s(i) / phi(s)."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field

import numpy as np

from pae import theory
from pae.growth import ModelParams, continue_graph, derive_seed, generate
from pae.observables import degree_path


def _normalizer(name: str, p: float):
    if name == "phi":
        return lambda s: theory.phi(s, p)
    if name == "power":
        # straw man: right order of growth, wrong constant drift
        return lambda s: float(s) ** theory.c_p(p)
    raise ValueError(f"normalizer must be 'phi' or 'power', got {name!r}")


@dataclass
class VertexIncrement:
    vertex: int
    birth_step: int
    x_t0: float
    mean_diff: float
    stderr: float
    passed: bool


@dataclass
class MartingaleReport:
    p: float
    t0: int
    t1: int
    replicas: int
    master_seed: int
    normalizer: str
    vertices: list[VertexIncrement] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(v.passed for v in self.vertices)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def martingale_diagnostic(p: float, t0: int, t1: int, replicas: int, master_seed: int = 0,
                          normalizer: str = "phi") -> MartingaleReport:
    """Freeze one trajectory at ``t0``, continue it ``replicas`` times to ``t1`` and
    test E[X_t1(i) - X_t0(i)] = 0 for vertex 1 and the youngest vertex at ``t0``.

    A vertex passes when |mean| <= 3 stderr (or the increments are identically 0).
    Seeds: the frozen prefix uses ``derive_seed(master_seed, 0)``, continuation
    ``r`` uses ``derive_seed(master_seed, 1, r)``.
    """
    if not 1 <= t0 < t1:
        raise ValueError(f"need 1 <= t0 < t1, got t0={t0}, t1={t1}")
    if replicas < 2:
        raise ValueError("need at least two continuations to estimate a standard error")
    norm = _normalizer(normalizer, p)
    frozen, _ = generate(ModelParams(p, t0, derive_seed(master_seed, 0)))
    tracked = sorted({1, frozen.n_vertices})
    start = np.array([frozen.degree[v] for v in tracked], dtype=float) / norm(t0)
    end = np.empty((replicas, len(tracked)))
    for r in range(replicas):
        g = continue_graph(frozen, t1, p, derive_seed(master_seed, 1, r))
        end[r] = g.degree[tracked]
    end /= norm(t1)
    diffs = end - start

    report = MartingaleReport(p, t0, t1, replicas, master_seed, normalizer)
    for k, v in enumerate(tracked):
        mean = float(diffs[:, k].mean())
        se = float(diffs[:, k].std(ddof=1) / math.sqrt(replicas))
        ok = abs(mean) <= 3.0 * se if se > 0 else abs(mean) <= 1e-12
        report.vertices.append(VertexIncrement(v, int(frozen.birth_step[v]), float(start[k]),
                                               mean, se, ok))
    return report


@dataclass
class DegreeTailReport:
    p: float
    vertex: int
    t: int
    replicas: int
    master_seed: int
    lambdas: list[float]
    thresholds: list[float]
    frequencies: list[float]
    n_unborn: int
    monotone: bool
    concave_or_linear: bool
    decay_rate: float | None
    log_drop: float

    def as_dict(self) -> dict:
        d = asdict(self)
        # json has no infinity
        if math.isinf(d["log_drop"]):
            d["log_drop"] = None
        return d


def degree_tail_diagnostic(p: float, i: int, t: int, lambdas, replicas: int,
                           master_seed: int = 0) -> DegreeTailReport:
    """Exceedance frequencies of sup_s d_s(i)/phi(s) above lambda / i**c_p.

    Replica ``r`` is the trajectory with seed ``derive_seed(master_seed, r)``;
    trajectories in which vertex ``i`` is never born count as non-exceeding.
    ``decay_rate`` is minus the slope of log-frequency on lambda (over nonzero
    frequencies); ``log_drop`` is log f(min lambda) - log f(max lambda).
    """
    lambdas = sorted(float(x) for x in lambdas)
    if not lambdas:
        raise ValueError("lambda grid must be nonempty")
    cp = theory.c_p(p)
    thresholds = [lam / i**cp for lam in lambdas]
    table = theory.phi_table(t, p)
    sups = np.zeros(replicas)
    unborn = 0
    for r in range(replicas):
        g, _ = generate(ModelParams(p, t, derive_seed(master_seed, r)))
        if g.n_vertices < i:
            unborn += 1
            continue
        steps, deg = degree_path(g, i)
        sups[r] = float(np.max(deg / table[steps]))
    freq = np.array([(sups > th).mean() for th in thresholds])

    monotone = bool(np.all(np.diff(freq) <= 0))
    pos = freq > 0
    with np.errstate(divide="ignore"):
        logf = np.log(freq)
    decay = None
    concave = True
    if pos.sum() >= 2:
        lam = np.asarray(lambdas)[pos]
        decay = -float(np.polyfit(lam, logf[pos], 1)[0])
        if pos.sum() >= 3:
            # second differences of log f may not be significantly positive
            lf = logf[pos]
            sd = np.sqrt((1 - freq[pos]) / (replicas * freq[pos]))
            second = lf[2:] - 2 * lf[1:-1] + lf[:-2]
            noise = np.sqrt(sd[2:] ** 2 + 4 * sd[1:-1] ** 2 + sd[:-2] ** 2)
            concave = bool(np.all(second <= 3 * noise))
    if freq[0] == 0:
        drop = 0.0
    elif freq[-1] == 0:
        drop = math.inf
    else:
        drop = float(logf[0] - logf[-1])
    return DegreeTailReport(p, i, t, replicas, master_seed, lambdas, thresholds,
                            freq.tolist(), unborn, monotone, concave, decay, drop)
