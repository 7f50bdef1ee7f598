"""Log-log regression of ensemble means against t."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Sequence

import numpy as np

from pae import theory
from pae.observables import ObservableRecord

# observable name -> (record attribute, theory exponent as a function of p)
OBSERVABLES = {
    "cherries": ("cherries_simple", lambda p: 2.0 - p),
    "cherries_multi": ("cherries_multi", lambda p: 2.0 - p),
    "triangles": ("triangles", lambda p: 3.0 * theory.alpha(p)),
    "tau": ("tau", lambda p: -theory.gamma(p)),
    "clique": ("clique_lb", theory.alpha),
    "clique_lb": ("clique_lb", theory.alpha),
    "clique_exact": ("clique_exact", theory.alpha),
    "max_degree": ("max_degree", theory.c_p),
    "gamma_t_1": ("gamma_t_1", theory.c_p),
    "n_vertices": ("n_vertices", lambda p: 1.0),
}


class FitError(ValueError):
    pass


@dataclass
class ExponentFit:
    observable: str
    p: float
    slope: float
    intercept: float
    stderr: float
    stderr_bootstrap: float | None
    r_squared: float
    theory_exponent: float
    n_points: int
    n_replicas: int
    t_values: list[int] = field(default_factory=list)
    dropped_t: list[int] = field(default_factory=list)
    n_undefined: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


def theory_exponent(observable: str, p: float) -> float:
    """Exponent the theorems predict; negative for the decaying clustering coefficient."""
    try:
        return float(OBSERVABLES[observable][1](p))
    except KeyError:
        raise FitError(f"unknown observable {observable!r}; choose from {sorted(OBSERVABLES)}") from None


def ols(x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    """(slope, intercept, r_squared) of an ordinary least-squares line."""
    xc = x - x.mean()
    sxx = float(xc @ xc)
    slope = float(xc @ (y - y.mean())) / sxx
    intercept = float(y.mean() - slope * x.mean())
    resid = y - (intercept + slope * x)
    sst = float(((y - y.mean()) ** 2).sum())
    r2 = 1.0 - float(resid @ resid) / sst if sst > 0 else 1.0
    return slope, intercept, r2


def fit_exponent(records: Sequence[ObservableRecord], observable: str, p: float,
                 *, bootstrap: int = 200, seed: int = 0) -> ExponentFit:
    """Regress log(mean observable) on log t over the records at ``p``.

    Points whose mean is not positive are dropped and listed in ``dropped_t``;
    undefined values (e.g. tau with no cherries) are skipped and counted.
    ``stderr`` propagates the replica dispersion of every mean through the
    delta method; ``stderr_bootstrap`` resamples replicas within each t.
    """
    if observable not in OBSERVABLES:
        raise FitError(f"unknown observable {observable!r}; choose from {sorted(OBSERVABLES)}")
    attr = OBSERVABLES[observable][0]
    groups: dict[int, list[float]] = {}
    n_undefined = 0
    for r in records:
        if not math.isclose(r.p, p, rel_tol=0, abs_tol=1e-12):
            continue
        v = getattr(r, attr)
        if v is None:
            n_undefined += 1
            continue
        groups.setdefault(r.t, []).append(float(v))

    t_values, samples, dropped = [], [], []
    for t in sorted(groups):
        vals = np.asarray(groups[t])
        if vals.mean() <= 0:
            dropped.append(t)
        else:
            t_values.append(t)
            samples.append(vals)
    if len(t_values) < 3:
        raise FitError(f"{observable} at p={p}: only {len(t_values)} usable grid points "
                       f"(dropped non-positive means at t={dropped}); need at least 3")

    x = np.log(np.asarray(t_values, dtype=float))
    means = np.array([s.mean() for s in samples])
    slope, intercept, r2 = ols(x, np.log(means))

    xc = x - x.mean()
    weights = xc / float(xc @ xc)
    if all(len(s) >= 2 for s in samples):
        var_log = np.array([s.var(ddof=1) / len(s) for s in samples]) / means**2
        stderr = float(np.sqrt(np.sum(weights**2 * var_log)))
    else:
        resid = np.log(means) - (intercept + slope * x)
        stderr = float(np.sqrt(float(resid @ resid) / max(len(x) - 2, 1) / float(xc @ xc)))

    stderr_bs = None
    if bootstrap and all(len(s) >= 2 for s in samples):
        rng = np.random.default_rng(seed)
        slopes = np.empty(bootstrap)
        for b in range(bootstrap):
            m = np.array([s[rng.integers(0, len(s), len(s))].mean() for s in samples])
            if np.any(m <= 0):
                slopes[b] = np.nan
                continue
            slopes[b] = float(weights @ np.log(m))
        stderr_bs = float(np.nanstd(slopes, ddof=1))

    return ExponentFit(
        observable=observable, p=float(p), slope=slope, intercept=intercept,
        stderr=stderr, stderr_bootstrap=stderr_bs, r_squared=r2,
        theory_exponent=theory_exponent(observable, p), n_points=len(t_values),
        n_replicas=min(len(s) for s in samples), t_values=[int(t) for t in t_values],
        dropped_t=[int(t) for t in dropped], n_undefined=n_undefined,
    )
