"""Geometry of the limit body K_{k,t} = {lam in simplex : <lam, a> <= ||a||_(t)}.

Membership is only decidable approximately: there is a cheap necessary test
against the corner directions ``(1^m 0^(k-m))/m`` and an ascent-based test
over the whole simplex.  Exposed points are gradients of the norm.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .errors import DomainError
from .spectral_measure import max_multiplicity
from .tnorm import (_as_vector, _hessian_from_weights, _smooth_weights, check_t, gradient, on_sup_branch, phi,
                    value_and_gradient)

EPS_MEM = 1e-7


class Status(str, Enum):
    INSIDE = "inside"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class MembershipVerdict:
    """Outcome of :func:`membership`.

    ``slack`` is the largest value found of
    ``(<lam, a> - ||a||) / (||a|| - 1/k)`` over ``a`` in the simplex; it is
    negative in the interior, zero on the boundary and positive outside.
    ``gap`` is the raw ``<lam, a> - ||a||`` at the certificate ``a``.
    """

    status: Status
    slack: float
    certificate: np.ndarray
    gap: float


@dataclass
class AscentConfig:
    restarts: int = 32
    iterations: int = 500
    patience: int = 60
    step: float = 0.1
    tol: float = EPS_MEM
    seed: int = 0
    rng: np.random.Generator | None = field(default=None, repr=False)


def corner_directions(k: int) -> np.ndarray:
    """Rows ``(1^m 0^(k-m)) / m`` for ``m = 1..k``."""
    return np.tril(np.ones((k, k))) / np.arange(1, k + 1)[:, None]


def support_necessary_test(lam, t: float, tol: float = EPS_MEM) -> tuple[bool, int, float]:
    """Check ``sum_{i<=m} lam_i <= phi(m/k, t)`` for every ``m``.

    ``lam`` must be sorted decreasingly.  Returns ``(passed, worst_m, margin)``
    where ``margin`` is the largest excess of a partial sum over ``phi``.
    """
    lam = np.asarray(lam, dtype=float).ravel()
    t = check_t(t)
    if np.any(np.diff(lam) > 0):
        raise DomainError("lam must be sorted in decreasing order")
    k = lam.size
    m = np.arange(1, k + 1)
    bound = np.ones(k)
    inner = m < k
    bound[inner] = phi(m[inner] / k, t)
    excess = np.cumsum(lam) - bound
    margin = float(excess.max())
    # report the smallest m among near-ties so rounding in the full sum does not win
    j = int(np.argmax(excess >= margin - 1e-12))
    return margin <= tol, j + 1, margin


def exposed_point(x, t: float) -> np.ndarray:
    """Exposed point of ``K_{k,t}`` selected by a smooth point ``x``."""
    return gradient(x, t)


def project_simplex(v: np.ndarray) -> np.ndarray:
    """Euclidean projection onto the probability simplex (sort-based)."""
    u = np.sort(v)[::-1]
    css = np.cumsum(u) - 1.0
    rho = np.nonzero(u * np.arange(1, v.size + 1) > css)[0][-1]
    return np.maximum(v - css[rho] / (rho + 1.0), 0.0)


def _value_and_supergrad(a, t):
    """Norm value and a subgradient; at sup-branch points use the top-face average."""
    if on_sup_branch(a, t):
        m, top = max_multiplicity(a)
        return top, np.where(a >= top - 1e-12 * top, 1.0 / m, 0.0)
    return value_and_gradient(a, t)


def _to_face(a: np.ndarray) -> np.ndarray | None:
    """Push ``a`` radially away from the barycentre until a coordinate hits 0."""
    k = a.size
    h = a - 1.0 / k
    if np.max(np.abs(h)) < 1e-14:
        return None
    neg = h < 0
    tau = np.min((1.0 / k) / -h[neg])
    out = np.maximum(1.0 / k + tau * h, 0.0)
    return out / out.sum()


def _ratio(lam, a, t):
    k = a.size
    val, g = _value_and_supergrad(a, t)
    den = val - 1.0 / k
    num = float(lam @ a) - val
    r = num / den
    grad = (lam - g) / den - num * g / den ** 2
    return r, grad, num


def membership(lam, t: float, cfg: AscentConfig | None = None) -> MembershipVerdict:
    """Approximate membership of ``lam`` in ``K_{k,t}`` by projected ascent.

    Maximises the scale-free slack over the simplex starting from the corner
    directions (all but the barycentre) and ``cfg.restarts`` random points.
    The ratio is constant along rays from the barycentre, so every iterate is
    pushed out to the simplex boundary, which keeps the denominator away
    from zero.
    """
    cfg = cfg or AscentConfig()
    t = check_t(t)
    lam = _as_vector(lam)
    if np.any(lam < 0) or abs(lam.sum() - 1.0) > 1e-10:
        raise DomainError("lam must be a probability vector")
    k = lam.size
    rng = cfg.rng if cfg.rng is not None else np.random.default_rng(cfg.seed)
    # rearrangement: the best direction is ordered like lam
    order = np.argsort(-lam, kind="stable")
    starts = list(corner_directions(k)[:-1])
    starts += list(rng.dirichlet(np.ones(k), size=cfg.restarts))

    best_r, best_a, best_gap = -np.inf, None, -np.inf
    for a0 in starts:
        a = _to_face(np.sort(a0)[::-1][np.argsort(order)])
        if a is None:
            continue
        r, g, gap = _ratio(lam, a, t)
        cur_r, cur_a, cur_gap = r, a, gap
        stale = 0
        for it in range(1, cfg.iterations + 1):
            gn = np.linalg.norm(g)
            if gn < 1e-15:
                break
            cand = _to_face(project_simplex(a + cfg.step / np.sqrt(it) * g / gn))
            if cand is None:
                break
            a = cand
            r, g, gap = _ratio(lam, a, t)
            if r > cur_r + 1e-12:
                cur_r, cur_a, cur_gap = r, a, gap
                stale = 0
            else:
                stale += 1
                if stale >= cfg.patience:
                    break
        if cur_r > best_r:
            best_r, best_a, best_gap = cur_r, cur_a, cur_gap

    if best_r > cfg.tol:
        status = Status.OUTSIDE
    elif best_r < -cfg.tol:
        status = Status.INSIDE
    else:
        status = Status.BOUNDARY
    return MembershipVerdict(status, float(best_r), best_a, float(best_gap))


def lemma_gap(a, q: float) -> float:
    """Power-sum expression that is nonnegative for sorted positive ``a``.

    ``a_k^(1+q) (s1 s3 - s2^2) + (s2 s_{3+q} - s3 s_{2+q}) - a_k (s1 s_{3+q} - s2 s_{2+q})``
    with ``s_p = sum a_i^p``; it vanishes exactly on at most two-valued ``a``.
    """
    a = np.asarray(a, dtype=float).ravel()
    if np.any(a <= 0):
        raise DomainError("entries must be positive")
    if np.any(np.diff(a) > 0):
        raise DomainError("a must be sorted in decreasing order")
    if not q > 0:
        raise DomainError("q must be positive")
    s = {p: float(np.sum(a ** p)) for p in (1, 2, 3, 2 + q, 3 + q)}
    ak = a[-1]
    return (ak ** (1 + q) * (s[1] * s[3] - s[2] ** 2)
            + (s[2] * s[3 + q] - s[3] * s[2 + q])
            - ak * (s[1] * s[3 + q] - s[2] * s[2 + q]))


def lemma_gap_scale(a, q: float) -> float:
    """Magnitude of the largest term in :func:`lemma_gap`, for relative tolerances."""
    a = np.asarray(a, dtype=float)
    return float(a.size ** 2 * a.max() ** (5 + q))


def ascent_direction(x) -> np.ndarray:
    """``y = x - (1^(k-l) 0^l)/(k-l)`` for sorted ``x`` with ``l`` trailing zeros."""
    x = _as_vector(x)
    if np.any(np.diff(x) > 0) or x[-1] != 0.0:
        raise DomainError("x must be sorted decreasingly with x_k = 0")
    nz = int(np.count_nonzero(x > 0))
    y = x.copy()
    y[:nz] -= 1.0 / nz
    return y


def lp_objective(x, t: float, p: float) -> float:
    """``g(x) = ||grad ||x||_(t)||_p^p``."""
    return float(np.sum(gradient(x, t) ** p))


def ascent_derivative(x, t: float, p: float) -> float:
    """Directional derivative of ``g`` along :func:`ascent_direction`.

    Equals ``p <H(x) y, grad^(p-1)>``; positive for at least three-valued
    ``x`` and zero for two-valued ``x``.
    """
    if not p > 1:
        raise DomainError("p must exceed 1")
    y = ascent_direction(x)
    t = check_t(t)
    a = _smooth_weights(x, t)
    grad = a * a / np.sum(a * a)
    H = _hessian_from_weights(a)
    return float(p * (H @ y) @ grad ** (p - 1))
