"""Closed-form exponents and the degree normaliser phi."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np
from scipy import optimize

P_STAR = 2.0 - math.sqrt(3.0)
GAMMA_STAR = 2.0 * math.sqrt(3.0) - 3.0


def c_p(p: float) -> float:
    return 1.0 - p / 2.0


def alpha(p: float) -> float:
    return (1.0 - p) / (2.0 - p)


def gamma(p: float) -> float:
    return 2.0 - p - 3.0 * (1.0 - p) / (2.0 - p)


def gamma_alt(p: float) -> float:
    """Same function written as (2-p) + 3/(2-p) - 3."""
    q = 2.0 - p
    return q + 3.0 / q - 3.0


@dataclass(frozen=True)
class TheoryExponents:
    p: float
    c_p: float
    alpha: float
    gamma: float
    cherry_exponent: float
    triangle_exponent: float

    @classmethod
    def at(cls, p: float) -> "TheoryExponents":
        if not 0.0 <= p <= 1.0:
            raise ValueError(f"p must lie in [0, 1], got {p}")
        a = alpha(p)
        return cls(p=p, c_p=c_p(p), alpha=a, gamma=gamma(p),
                   cherry_exponent=2.0 - p, triangle_exponent=3.0 * a)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["p_star"] = P_STAR
        d["gamma_star"] = GAMMA_STAR
        return d


_SUM_CHUNK = 1 << 20


def log_phi(t: int, p: float) -> float:
    """log of prod_{s=1}^{t-1} (1 + c_p/s), summed in chunks of log1p terms."""
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    c = c_p(p)
    total = 0.0
    for start in range(1, t, _SUM_CHUNK):
        s = np.arange(start, min(start + _SUM_CHUNK, t), dtype=np.float64)
        total += float(np.sum(np.log1p(c / s)))
    return total


def phi(t: int, p: float) -> float:
    return math.exp(log_phi(t, p))


def phi_table(t_max: int, p: float) -> np.ndarray:
    """``out[s] = phi(s)`` for ``s = 1..t_max``; ``out[0]`` is NaN."""
    c = c_p(p)
    out = np.empty(t_max + 1)
    out[0] = np.nan
    out[1] = 0.0
    if t_max > 1:
        s = np.arange(1, t_max, dtype=np.float64)
        np.cumsum(np.log1p(c / s), out=out[2:])
    out[1:] = np.exp(out[1:])
    return out


def phi_exact(t: int, p: Fraction) -> Fraction:
    """Exact rational phi for rational p; slow, intended for small t."""
    c = 1 - Fraction(p) / 2
    out = Fraction(1)
    for s in range(1, t):
        out *= 1 + c / s
    return out


def phi_asymptotic_check(p: float, t_grid) -> tuple[float, float]:
    """(min, max) of phi(t) / t**c_p over ``t_grid``."""
    grid = np.asarray(sorted(set(int(t) for t in t_grid)), dtype=np.int64)
    if grid.size == 0:
        raise ValueError("t_grid must be nonempty")
    table = phi_table(int(grid[-1]), p)
    ratio = table[grid] / grid.astype(np.float64) ** c_p(p)
    return float(ratio.min()), float(ratio.max())


def expected_degree_vertex1(t: int, p: float) -> float:
    """E[d_t(1)] = 2 phi(t), since d_s(1)/phi(s) is a martingale started at 2."""
    return 2.0 * phi(t, p)


def numeric_gamma_argmin(grid_step: float = 1e-6) -> tuple[float, float]:
    """Argmin of gamma on a uniform grid, refined by golden-section search."""
    grid = np.linspace(0.0, 1.0, int(round(1.0 / grid_step)) + 1)
    i = int(np.argmin(2.0 - grid - 3.0 * (1.0 - grid) / (2.0 - grid)))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, len(grid) - 1)]
    res = optimize.minimize_scalar(gamma, bracket=(lo, grid[i], hi), method="golden",
                                   options={"xtol": 1e-12})
    return float(res.x), float(res.fun)


def gamma_minimizer(grid_step: float = 1e-6) -> tuple[float, float]:
    """Return (2 - sqrt 3, 2 sqrt 3 - 3), after checking it against the numeric argmin.

    Raises ``ArithmeticError`` if the numeric search lands elsewhere.
    """
    p_num, _ = numeric_gamma_argmin(grid_step)
    if abs(p_num - P_STAR) > grid_step:
        raise ArithmeticError(f"numeric minimiser {p_num} disagrees with {P_STAR}")
    return P_STAR, gamma(P_STAR)
