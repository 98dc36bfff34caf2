"""Empirical measures of real vectors and their Cauchy transforms.

The measure of ``x`` puts mass ``1/k`` on every entry.  All transforms are
evaluated at real points strictly to the right of the support, which is the
only region the norm computations need.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

from .errors import DomainError

#: relative tolerance used to group near-equal maxima
TIE_TOL = 1e-12


@dataclass(frozen=True)
class AtomicMeasure:
    """Uniform atomic measure ``(1/k) sum_i delta_{x_i}``."""

    atoms: np.ndarray

    def __post_init__(self):
        atoms = np.asarray(self.atoms, dtype=float).ravel()
        if atoms.size < 2:
            raise DomainError("an atomic measure needs at least two atoms")
        if not np.all(np.isfinite(atoms)):
            raise DomainError("atoms must be finite")
        object.__setattr__(self, "atoms", atoms)

    @property
    def k(self) -> int:
        return self.atoms.size

    @property
    def top(self) -> float:
        return float(self.atoms.max())

    def gaps(self, v: float) -> np.ndarray:
        """Return ``v - x_i``, raising if ``v`` is not right of the support."""
        if not v > self.top:
            raise DomainError(f"evaluation point {v!r} must exceed max atom {self.top!r}")
        return v - self.atoms


class TransformBundle(NamedTuple):
    G: float
    dG: float
    d2G: float
    F: float
    dF: float


def cauchy_transform(m: AtomicMeasure, v: float) -> float:
    """``G(v) = (1/k) sum 1/(v - x_i)`` for ``v > max(x)``."""
    return float(np.mean(1.0 / m.gaps(v)))


def f_transform_bundle(m: AtomicMeasure, v: float) -> TransformBundle:
    """G, G', G'', F = 1/G and F' = -G'/G^2 at ``v``."""
    a = 1.0 / m.gaps(v)
    G = float(np.mean(a))
    dG = -float(np.mean(a * a))
    d2G = 2.0 * float(np.mean(a ** 3))
    return TransformBundle(G, dG, d2G, 1.0 / G, -dG / (G * G))


def power_sums(m: AtomicMeasure, w: float, exponents: Sequence[float]) -> np.ndarray:
    """``s_p = sum_i (w - x_i)^(-p)`` for each requested ``p``."""
    a = 1.0 / m.gaps(w)
    ps = np.asarray(exponents, dtype=float)
    if np.any(ps < 0):
        raise DomainError("exponents must be nonnegative")
    return np.array([np.sum(a ** p) for p in ps])


def max_multiplicity(x, tol: float = TIE_TOL) -> tuple[int, float]:
    """Number of entries tied with the maximum, and the maximum itself.

    Two entries are tied when they differ by at most ``tol`` times the
    largest absolute entry.
    """
    x = np.asarray(x, dtype=float).ravel()
    top = float(x.max())
    scale = max(float(np.abs(x).max()), np.finfo(float).tiny)
    return int(np.count_nonzero(x >= top - tol * scale)), top
