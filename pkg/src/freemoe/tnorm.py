"""The free-compression (t)-norm on R^k and its derivatives.

For ``x`` in the nonnegative orthant the norm equals ``t`` times the right
edge of the support of the free convolution power ``mu_x^{boxplus 1/t}``.
Away from the sup-norm branch that edge is obtained from the subordination
point ``w > max(x)``, the largest root of

    (1 - t) * mean((w - x)^-2) = mean((w - x)^-1)^2

and the norm is ``w - (1 - t) / G(w)``.  Every routine below works with the
gaps ``w - x_i`` directly so that nothing is lost to cancellation when ``w``
sits very close to ``max(x)``.
"""
from __future__ import annotations

from enum import Enum
from typing import NamedTuple

import numpy as np
from scipy.optimize import brentq

from .errors import BranchError, ConditioningError, DomainError
from .spectral_measure import max_multiplicity

COND_EPS = 1e-12


class Branch(str, Enum):
    ROOT = "root_branch"
    SUP = "sup_branch"


class TNormResult(NamedTuple):
    value: float
    w: float | None
    branch: Branch


def check_t(t: float) -> float:
    t = float(t)
    if not 0.0 < t < 1.0:
        raise DomainError(f"t must lie in (0, 1), got {t!r}")
    return t


def _as_vector(x) -> np.ndarray:
    x = np.asarray(x, dtype=float).ravel()
    if x.size < 2:
        raise DomainError("vectors must have length k >= 2")
    if not np.all(np.isfinite(x)):
        raise DomainError("entries must be finite")
    return x


def on_sup_branch(x, t: float) -> bool:
    """True when the top multiplicity forces ``||x||_(t) = max(x)``."""
    x = np.asarray(x, dtype=float)
    m, _ = max_multiplicity(x)
    return m / x.size + t >= 1.0


def _ratio(d, c, t):
    # sign of phi(v) at v = max(x) + d, scale free: (1-t) k sum a^2 / (sum a)^2 - 1
    a = 1.0 / (np.asarray(d, dtype=float)[..., None] + c)
    return (1.0 - t) * c.size * np.sum(a * a, axis=-1) / np.sum(a, axis=-1) ** 2 - 1.0


def _solve_gap(c: np.ndarray, t: float, spread: float) -> float:
    """Largest root ``d > 0`` of the subordination equation in gap form."""
    exps = np.arange(-64, 41, dtype=float)
    hi = spread * max(1e3, 1e2 / np.sqrt(t))
    grid = spread * 2.0 ** exps
    grid = grid[grid <= hi]
    vals = _ratio(grid, c, t)
    while vals[-1] >= 0.0:
        grid = np.append(grid, grid[-1] * 2.0)
        vals = np.append(vals, _ratio(grid[-1], c, t))
    pos = np.flatnonzero(vals > 0.0)
    if pos.size == 0:
        raise ConditioningError("root lies below the finest gap resolved by the scan")
    j = pos[-1]
    lo, up = grid[j], grid[j + 1]
    return brentq(lambda d: float(_ratio(d, c, t)), lo, up,
                  xtol=spread * 1e-17, rtol=4 * np.finfo(float).eps, maxiter=200)


def solve_w(x, t: float) -> float:
    """Subordination point ``w(x) > max(x)`` on the smooth branch.

    Works for arbitrary non-constant real ``x``; the result is translation
    covariant and positively homogeneous in ``x``.
    """
    x = _as_vector(x)
    t = check_t(t)
    if on_sup_branch(x, t):
        raise BranchError("m_x/k + t >= 1: the norm is on the sup branch")
    top = x.max()
    c = top - x
    return float(top + _solve_gap(c, t, float(c.max())))


def _upper_edge(x: np.ndarray, t: float) -> TNormResult:
    if on_sup_branch(x, t):
        return TNormResult(float(x.max()), None, Branch.SUP)
    top = x.max()
    c = top - x
    d = _solve_gap(c, t, float(c.max()))
    value = top + d - (1.0 - t) / np.mean(1.0 / (d + c))
    return TNormResult(float(value), float(top + d), Branch.ROOT)


def tnorm(x, t: float) -> TNormResult:
    """(t)-norm of a nonzero vector in the nonnegative orthant.

    >>> round(tnorm([1.0, 0.0], 0.25).value, 7)
    0.9330127
    """
    x = _as_vector(x)
    t = check_t(t)
    if np.any(x < 0):
        raise DomainError("tnorm is defined here on the nonnegative orthant")
    if not np.any(x > 0):
        raise DomainError("tnorm of the zero vector")
    return _upper_edge(x, t)


def edges(x, t: float) -> tuple[float, float]:
    """Scaled lower and upper support edges ``(L, U)`` for any real vector.

    ``U`` equals ``tnorm`` on the nonnegative orthant; ``L = -U(-x)``.
    """
    x = _as_vector(x)
    t = check_t(t)
    return -_upper_edge(-x, t).value, _upper_edge(x, t).value


def phi(u, t):
    """(t)-norm of the indicator of a fraction ``u`` of coordinates.

    Uses ``(sqrt(u(1-t)) + sqrt(t(1-u)))^2`` and caps at 1 once ``u + t >= 1``.
    Accepts arrays.
    """
    u = np.asarray(u, dtype=float)
    t = np.asarray(t, dtype=float)
    if np.any((u <= 0) | (u >= 1)) or np.any((t <= 0) | (t >= 1)):
        raise DomainError("phi is defined on (0,1) x (0,1)")
    val = np.where(u + t >= 1.0, 1.0,
                   (np.sqrt(u * (1.0 - t)) + np.sqrt(t * (1.0 - u))) ** 2)
    return float(val) if val.ndim == 0 else val


def _smooth_weights(x, t) -> np.ndarray:
    x = _as_vector(x)
    t = check_t(t)
    if on_sup_branch(x, t):
        raise BranchError("the norm is not differentiable here (m_x/k + t >= 1)")
    top = x.max()
    c = top - x
    d = _solve_gap(c, t, float(c.max()))
    return 1.0 / (d + c)


def value_and_gradient(x, t: float) -> tuple[float, np.ndarray]:
    """Norm and gradient from a single root solve (smooth branch only)."""
    x = _as_vector(x)
    a = _smooth_weights(x, t)
    a2 = a * a
    value = x.max() + 1.0 / a.max() - (1.0 - t) * a.size / a.sum()
    return float(value), a2 / a2.sum()


def gradient(x, t: float) -> np.ndarray:
    """Gradient ``a_i^2 / s_2`` with ``a_i = 1/(w - x_i)``; a probability vector."""
    a = _smooth_weights(x, t)
    a2 = a * a
    return a2 / a2.sum()


def _hessian_from_weights(a: np.ndarray) -> np.ndarray:
    s1, s2, s3 = a.sum(), (a ** 2).sum(), (a ** 3).sum()
    # s1 s3 - s2^2 as a sum of nonnegative pair terms, exact up to rounding
    diff = a[:, None] - a[None, :]
    den = 0.5 * float(np.sum(np.outer(a, a) * diff * diff))
    if den < COND_EPS * s2 * s2:
        raise ConditioningError("x is too close to a constant vector")
    a2 = a * a
    inner = -s3 + s2 * (a[:, None] + a[None, :]) - s1 * np.outer(a, a)
    H = 2.0 * np.outer(a2, a2) * inner / (s2 * den)
    H[np.diag_indices_from(H)] += 2.0 * a ** 3 / s2
    return 0.5 * (H + H.T)


def hessian(x, t: float) -> np.ndarray:
    """Hessian of the norm at a smooth, non-constant point."""
    return _hessian_from_weights(_smooth_weights(x, t))


def min_shift(x, t: float) -> tuple[float, float]:
    """Minimiser ``s0`` of ``s -> ||x + s 1||_(t)`` and the minimum value.

    The norm along the line is ``|s - s0| + min_value``, with the two support
    edges placed symmetrically about zero at ``s0``.
    """
    x = _as_vector(x)
    if np.ptp(x) == 0.0:
        raise DomainError("min_shift is undefined for constant vectors")
    lo, up = edges(x, t)
    return -(up + lo) / 2.0 + 0.0, (up - lo) / 2.0


def shifted_norm(x, s: float, t: float) -> float:
    """``||x + s 1||_(t)`` for any real ``x`` via the two support edges."""
    lo, up = edges(x, t)
    return max(up + s, -(lo + s))
