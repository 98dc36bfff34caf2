"""Shannon and Renyi entropies of probability vectors, in nats."""
from __future__ import annotations

import numpy as np

from .errors import DomainError

NORM_TOL = 1e-10


def as_prob_vector(x, tol: float = NORM_TOL) -> np.ndarray:
    """Validate a probability vector and renormalise away rounding."""
    x = np.asarray(x, dtype=float).ravel()
    if x.size == 0 or np.any(x < 0) or not np.all(np.isfinite(x)):
        raise DomainError("probability vectors need finite nonnegative entries")
    total = x.sum()
    if abs(total - 1.0) > tol:
        raise DomainError(f"entries sum to {total!r}, not 1")
    return x / total


def _check_p(p: float) -> float:
    p = float(p)
    if not p >= 1.0:
        raise DomainError(f"Renyi order must be >= 1, got {p!r}")
    return p


def renyi_entropy(lam, p: float = 1.0) -> float:
    """Renyi entropy of order ``p`` in ``[1, inf]``; ``p = 1`` is Shannon.

    >>> round(renyi_entropy([0.5, 0.5], 2), 7)
    0.6931472
    """
    p = _check_p(p)
    lam = as_prob_vector(lam)
    if p == 1.0:
        nz = lam[lam > 0]
        return float(max(-np.sum(nz * np.log(nz)), 0.0))
    if np.isinf(p):
        return float(-np.log(lam.max()))
    nz = lam[lam > 0]
    # log sum lam^p via a max-shift so large p does not underflow
    logs = p * np.log(nz)
    top = logs.max()
    return float(max((top + np.log(np.sum(np.exp(logs - top)))) / (1.0 - p), 0.0))


def entropy_of_two_level(a: float, count_rest: int) -> float:
    """Shannon entropy of ``(a, b, ..., b)`` with ``count_rest`` copies of ``b``."""
    return renyi_two_level(a, count_rest, 1.0)


def renyi_two_level(a, count_rest, p: float = 1.0):
    """Renyi entropy of ``(a, b, ..., b)`` where ``b = (1 - a) / count_rest``.

    Closed form, vectorised over ``a``; never materialises the vector.
    """
    p = _check_p(p)
    a = np.asarray(a, dtype=float)
    n = np.asarray(count_rest, dtype=float)
    if np.any((a <= 0) | (a > 1)) or np.any(n < 1):
        raise DomainError("need 0 < a <= 1 and count_rest >= 1")
    rest = 1.0 - a
    b = rest / n
    with np.errstate(divide="ignore", invalid="ignore"):
        if p == 1.0:
            out = -a * np.log(a) - np.where(rest > 0, rest * np.log(np.where(rest > 0, b, 1.0)), 0.0)
        elif np.isinf(p):
            out = -np.log(np.maximum(a, b))
        else:
            lb = np.where(rest > 0, np.log(n) + p * np.log(np.where(rest > 0, b, 1.0)), -np.inf)
            out = np.logaddexp(p * np.log(a), lb) / (1.0 - p)
    out = np.maximum(out, 0.0)
    return float(out) if out.ndim == 0 else out


def binary_entropy(t):
    """``H(t, 1 - t)`` in nats."""
    t = np.asarray(t, dtype=float)
    out = -(t * np.log(t) + (1.0 - t) * np.log1p(-t))
    return float(out) if out.ndim == 0 else out
