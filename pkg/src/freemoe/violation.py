"""Limiting entropy difference for conjugate random channels and the Bell input.

``D(k, t) = H_p(gamma) - 2 H_p(x*_t)`` where ``x*_t`` is the minimiser of the
single-channel output entropy and ``gamma`` is the Bell-state output spectrum
of the product channel (exact limit) or the Hayden-Winter lower bound on its
top eigenvalue.  A negative value certifies a violation of additivity.

All quantities here are two-level vectors, so every entropy is evaluated in
closed form and the functions vectorise over ``t``.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum

import numpy as np
from scipy.optimize import minimize_scalar

from .entropy import binary_entropy, renyi_two_level
from .errors import DomainError, NotFoundError
from .tnorm import phi

T_LO = 1e-4
T_HI = 1.0 - 1e-4
GRID_N = 2000
REFINE_TOL = 1e-8


class Bound(str, Enum):
    EXACT = "exact"
    HAYDEN_WINTER = "hayden_winter"

    @classmethod
    def parse(cls, s) -> "Bound":
        if isinstance(s, cls):
            return s
        s = str(s).lower()
        if s in ("hw", "hayden_winter", "hayden-winter"):
            return cls.HAYDEN_WINTER
        if s == "exact":
            return cls.EXACT
        raise DomainError(f"unknown bound {s!r}")


@dataclass(frozen=True)
class SweepRecord:
    k: int
    t: float
    p: float
    bound: str
    D: float
    a_star: float
    gamma_top: float

    def as_dict(self) -> dict:
        return asdict(self)


def _check(k, t):
    if int(k) != k or k < 2:
        raise DomainError(f"k must be an integer >= 2, got {k!r}")
    t = np.asarray(t, dtype=float)
    if np.any((t <= 0) | (t >= 1)):
        raise DomainError("t must lie in (0, 1)")
    return int(k), t


def x_opt_top(k: int, t):
    """Top entry ``phi(1/k, t)`` of ``x*_t`` (vectorised over ``t``)."""
    k, t = _check(k, t)
    return phi(1.0 / k, t)


def x_opt(k: int, t: float) -> np.ndarray:
    """``x*_t = (a, b, ..., b)`` with ``a = phi(1/k, t)``.

    >>> x_opt(2, 0.25).round(7)
    array([0.9330127, 0.0669873])
    """
    a = float(x_opt_top(k, t))
    return np.r_[a, np.full(k - 1, (1.0 - a) / (k - 1))]


def gamma_top(k: int, t, bound=Bound.EXACT):
    """Top entry of the Bell output spectrum (exact) or its HW surrogate.

    For the Hayden-Winter bound the top entry is ``max(t, 1/k^2)``: a top
    eigenvalue of at least ``t`` is no constraint once ``t < 1/k^2``, and the
    most mixed admissible spectrum is then uniform.
    """
    k, t = _check(k, t)
    if Bound.parse(bound) is Bound.EXACT:
        return t + (1.0 - t) / k ** 2
    return np.maximum(t, 1.0 / k ** 2)


def _two_level(top, n):
    top = float(top)
    return np.r_[top, np.full(n, (1.0 - top) / n)]


def gamma_opt(k: int, t: float) -> np.ndarray:
    """Limit spectrum ``(t + (1-t)/k^2, (1-t)/k^2, ...)`` of length ``k^2``."""
    return _two_level(gamma_top(k, t, Bound.EXACT), k * k - 1)


def gamma_hw(k: int, t: float) -> np.ndarray:
    """More mixed spectrum ``(t, (1-t)/(k^2-1), ...)`` of length ``k^2``."""
    return _two_level(gamma_top(k, t, Bound.HAYDEN_WINTER), k * k - 1)


def entropy_diff(k: int, t, p: float = 1.0, bound=Bound.EXACT):
    """``H_p(gamma) - 2 H_p(x*_t)`` in nats; vectorised over ``t``."""
    k, t = _check(k, t)
    g = gamma_top(k, t, bound)
    a = x_opt_top(k, t)
    return renyi_two_level(g, k * k - 1, p) - 2.0 * renyi_two_level(a, k - 1, p)


def t_grid(grid_n: int = GRID_N, lo: float = T_LO, hi: float = T_HI) -> np.ndarray:
    return np.linspace(lo, hi, int(grid_n))


def min_over_t(k: int, p: float = 1.0, bound=Bound.EXACT, grid_n: int = GRID_N,
               refine_tol: float = REFINE_TOL) -> tuple[float, float]:
    """Minimise ``D(k, .)`` on a dense grid, then golden-section in the best cell.

    No unimodality is assumed; the refinement only polishes the grid winner.
    """
    ts = t_grid(grid_n)
    vals = entropy_diff(k, ts, p, bound)
    j = int(np.argmin(vals))
    t_best, d_best = float(ts[j]), float(vals[j])
    if 0 < j < ts.size - 1:
        res = minimize_scalar(lambda s: float(entropy_diff(k, s, p, bound)),
                              bracket=(ts[j - 1], ts[j], ts[j + 1]),
                              method="golden", tol=refine_tol)
        if T_LO <= res.x <= T_HI and res.fun < d_best:
            t_best, d_best = float(res.x), float(res.fun)
    return t_best, d_best


def _min_for_mode(k, p, bound, t_mode, grid_n):
    if t_mode == "free":
        return min_over_t(k, p, bound, grid_n)
    if t_mode == "inverse-k":
        t = 1.0 / k
    else:
        t = float(t_mode)
    return t, float(entropy_diff(k, t, p, bound))


def threshold_k(p: float = 1.0, bound=Bound.EXACT, t_mode="free", k_max: int = 1000,
                grid_n: int = GRID_N) -> tuple[int, float, float]:
    """Smallest ``k <= k_max`` with a negative (minimised) entropy difference.

    ``t_mode`` is ``"free"`` (minimise over t), ``"inverse-k"`` (t = 1/k) or a
    number giving a fixed t.  Returns ``(k, t, D)``; raises ``NotFoundError``
    when the scan is exhausted.  The scan is linear because monotonicity in
    ``k`` is not known.
    """
    if t_mode not in ("free", "inverse-k"):
        t_mode = float(t_mode)
    for k in range(2, int(k_max) + 1):
        if t_mode == "inverse-k" and 1.0 / k >= 1.0:
            continue
        t, d = _min_for_mode(k, p, bound, t_mode, grid_n)
        if d < 0:
            return k, t, d
    raise NotFoundError(f"no violation for k <= {k_max}")


def sweep(ks, p: float = 1.0, bound=Bound.EXACT, grid_n: int = GRID_N) -> list[SweepRecord]:
    """One record per ``(k, t)`` grid cell."""
    bound = Bound.parse(bound)
    ts = t_grid(grid_n)
    out = []
    for k in ks:
        ds = entropy_diff(k, ts, p, bound)
        tops = x_opt_top(k, ts)
        gs = gamma_top(k, ts, bound)
        out.extend(SweepRecord(int(k), float(t), float(p), bound.value, float(d), float(a), float(g))
                   for t, d, a, g in zip(ts, ds, tops, gs))
    return out


def asymptotic_check(t, k_list) -> list[dict]:
    """Compare ``D(k, t)`` with its large-``k`` limit ``-H(t, 1-t)``.

    Pass ``t="inverse-k"`` for the ``t = 1/k`` regime, where the reported
    ``ratio`` is ``D(k, 1/k) k / (-log k)`` and tends to 1.
    """
    rows = []
    for k in k_list:
        if t == "inverse-k":
            d = float(entropy_diff(k, 1.0 / k))
            rows.append({"k": int(k), "t": 1.0 / k, "D": d, "limit": -np.log(k) / k,
                         "ratio": d * k / -np.log(k)})
        else:
            d = float(entropy_diff(k, t))
            lim = -binary_entropy(t)
            rows.append({"k": int(k), "t": float(t), "D": d, "limit": lim, "gap": abs(d - lim)})
    return rows
