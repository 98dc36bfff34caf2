"""Finite-size Monte Carlo for random quantum channels.

A channel ``M_d -> M_k`` with environment ``C^n`` comes from a Haar isometry
``W : C^d -> C^k (x) C^n``.  Rows of ``W`` are indexed ``i * n + s`` with
``i`` the output index and ``s`` the environment index, so
``W.reshape(k, n, d)[:, s, :]`` is the Kraus operator ``A_s``.

Random streams are derived from ``(seed, trial, purpose)`` through
:class:`numpy.random.SeedSequence`, so every trial is reproducible on its
own and independent of scheduling.
"""
from __future__ import annotations

import os
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .entropy import renyi_entropy
from .errors import DomainError
from .kkt_geometry import support_necessary_test

PURPOSE = {"isometry": 1, "inputs": 2, "unitary": 3, "refine": 4}


def stream(seed: int, trial: int, purpose: str) -> np.random.Generator:
    """Independent generator for one ``(seed, trial, purpose)`` triple."""
    ss = np.random.SeedSequence(entropy=int(seed) % 2 ** 64, spawn_key=(int(trial), PURPOSE[purpose]))
    return np.random.Generator(np.random.PCG64(ss))


def ginibre(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    return (rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))) / np.sqrt(2.0)


def haar_isometry(rng: np.random.Generator, rows: int, cols: int) -> np.ndarray:
    """Haar isometry: QR of a Ginibre matrix with R's diagonal made positive."""
    q, r = np.linalg.qr(ginibre(rng, rows, cols))
    d = np.diag(r)
    return q * (d / np.abs(d))


def haar_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    return haar_isometry(rng, n, n)


class Kind(str, Enum):
    SINGLE = "single_output"
    BELL = "bell_output"


@dataclass
class ChannelSample:
    k: int
    n: int
    d: int
    isometry: np.ndarray = field(repr=False)
    seed: int
    trial_index: int

    @property
    def kraus(self) -> np.ndarray:
        """Kraus operators stacked as ``(n, k, d)``."""
        return self.isometry.reshape(self.k, self.n, self.d).transpose(1, 0, 2)


@dataclass
class SpectrumSample:
    eigenvalues: np.ndarray
    kind: Kind
    k: int
    n: int
    d: int
    seed: int
    trial: int


def _adjoint(W: np.ndarray, y: np.ndarray) -> np.ndarray:
    """``W^* y`` without materialising ``W^*``."""
    return (y.conj() @ W).conj()


def input_dimension(k: int, n: int, t: float) -> int:
    """``d = round(t k n)``, clipped to ``[1, k n]``."""
    return int(min(max(round(t * k * n), 1), k * n))


def sample_isometry(k: int, n: int, d: int, seed: int, trial: int = 0) -> ChannelSample:
    if not (k >= 1 and n >= 1 and 1 <= d <= k * n):
        raise DomainError(f"need 1 <= d <= k n, got k={k}, n={n}, d={d}")
    W = haar_isometry(stream(seed, trial, "isometry"), k * n, d)
    return ChannelSample(int(k), int(n), int(d), W, int(seed), int(trial))


def _spectra(Y: np.ndarray) -> np.ndarray:
    """Squared singular values of a batch of ``k x n`` matrices, sorted decreasingly."""
    sv = np.linalg.svd(Y, compute_uv=False)
    lam = sv ** 2
    return lam / lam.sum(axis=-1, keepdims=True)


def schmidt_spectrum(y, k: int) -> np.ndarray:
    """Schmidt coefficients of a unit vector in ``C^k (x) C^n``."""
    y = np.asarray(y, dtype=complex).ravel()
    if y.size % k:
        raise DomainError("vector length must be a multiple of k")
    if abs(np.linalg.norm(y) - 1.0) > 1e-10:
        raise DomainError("vector must have unit norm")
    return _spectra(y.reshape(k, -1))


def bell_output_spectrum(sample: ChannelSample, chunk: int = 64) -> SpectrumSample:
    """Eigenvalues of ``[Phi (x) conj(Phi)](E_d)`` as a ``k^2`` spectrum.

    With ``P = W W^*`` the output is
    ``rho[(i,j),(i',j')] = (1/d) sum_{s,u} P[(i,s),(j,u)] conj(P[(i',s),(j',u)])``,
    i.e. the Gram matrix of the vectors ``vec(A_s A_u^*)``.  ``P`` is built in
    slabs over ``s`` to bound memory.
    """
    k, n, d = sample.k, sample.n, sample.d
    W = sample.isometry
    W3 = W.reshape(k, n, d)
    Wh = W.conj().T
    rho = np.zeros((k * k, k * k), dtype=complex)
    for s0 in range(0, n, chunk):
        s1 = min(n, s0 + chunk)
        # rows (i, s) for s in the slab; columns (j, u)
        Pc = (W3[:, s0:s1, :].reshape(-1, d) @ Wh).reshape(k, s1 - s0, k, n)
        M = Pc.transpose(0, 2, 1, 3).reshape(k * k, -1)
        rho += M @ M.conj().T
    rho /= d
    rho = 0.5 * (rho + rho.conj().T)
    ev = np.linalg.eigvalsh(rho)[::-1]
    if ev.min() < -1e-8:
        warnings.warn(f"Bell output has eigenvalue {ev.min():.3e} < -1e-8", RuntimeWarning)
    ev = np.clip(ev, 0.0, None)
    return SpectrumSample(ev / ev.sum(), Kind.BELL, k, n, d, sample.seed, sample.trial_index)


def random_inputs(rng: np.random.Generator, d: int, count: int) -> np.ndarray:
    """``count`` Gaussian unit vectors in ``C^d``, as columns."""
    X = ginibre(rng, d, count)
    return X / np.linalg.norm(X, axis=0)


def output_spectra(sample: ChannelSample, X: np.ndarray, batch: int = 512) -> np.ndarray:
    """Schmidt spectra of ``W x`` for each column ``x`` of ``X``; shape ``(count, k)``."""
    k, n = sample.k, sample.n
    out = []
    for c0 in range(0, X.shape[1], batch):
        Y = sample.isometry @ X[:, c0:c0 + batch]
        out.append(_spectra(Y.T.reshape(-1, k, n)))
    return np.concatenate(out)


def _entropy_rows(spectra: np.ndarray, p: float) -> np.ndarray:
    return np.array([renyi_entropy(lam, p) for lam in spectra])


def _entropy_and_grad(sample: ChannelSample, x: np.ndarray, p: float):
    """Output entropy of the input ``x`` and its Wirtinger gradient in ``x``."""
    k, n = sample.k, sample.n
    Y = (sample.isometry @ x).reshape(k, n)
    rho = Y @ Y.conj().T
    lam, U = np.linalg.eigh(rho)
    lam = np.clip(lam, 1e-300, None)
    if p == 1.0:
        h = -float(np.sum(lam * np.log(lam)))
        fprime = -(np.log(lam) + 1.0)
    elif np.isinf(p):
        h = -float(np.log(lam[-1]))
        fprime = np.zeros(k)
        fprime[-1] = -1.0 / lam[-1]
    else:
        tr = float(np.sum(lam ** p))
        h = np.log(tr) / (1.0 - p)
        fprime = p * lam ** (p - 1) / ((1.0 - p) * tr)
    dY = (U * fprime) @ U.conj().T @ Y
    return h, _adjoint(sample.isometry, dY.ravel())


def refine_input(sample: ChannelSample, x: np.ndarray, p: float = 1.0,
                 power_steps: int = 200, descent_steps: int = 50, step: float = 1e-2,
                 decay: float = 0.98) -> tuple[float, np.ndarray]:
    """Locally lower the output entropy of a unit input ``x``.

    First alternate between the closest product vector to ``W x`` and its
    projection back onto the range of ``W`` (this raises the top Schmidt
    coefficient), then take projected gradient steps on the sphere with a
    geometrically decaying step.  Returns the best ``(entropy, x)`` seen.
    """
    k, n = sample.k, sample.n
    W = sample.isometry
    x = x / np.linalg.norm(x)
    best_h, best_x = _entropy_and_grad(sample, x, p)[0], x
    for _ in range(power_steps):
        Y = (W @ x).reshape(k, n)
        u, sv, vh = np.linalg.svd(Y, full_matrices=False)
        prod = np.outer(u[:, 0], vh[0]).ravel()
        nx = _adjoint(W, prod)
        nx /= np.linalg.norm(nx)
        if np.linalg.norm(nx - x) < 1e-10:
            x = nx
            break
        x = nx
    h, g = _entropy_and_grad(sample, x, p)
    if h < best_h:
        best_h, best_x = h, x
    eta = step
    for _ in range(descent_steps):
        g = g - np.vdot(x, g) * x
        gn = np.linalg.norm(g)
        if gn < 1e-14:
            break
        cand = x - eta * g / gn
        cand /= np.linalg.norm(cand)
        hc, gc = _entropy_and_grad(sample, cand, p)
        if hc < h:
            x, h, g = cand, hc, gc
            if h < best_h:
                best_h, best_x = h, x
        eta *= decay
    return float(best_h), best_x


def empirical_moe(sample: ChannelSample, p: float = 1.0, num_inputs: int = 1000,
                  rng: np.random.Generator | None = None, refine: bool = False,
                  refine_top: int = 8) -> float:
    """Upper estimate of the minimum output ``p``-entropy.

    Minimum over ``num_inputs`` Gaussian inputs.  With ``refine=True`` the
    ``refine_top`` best inputs are improved by :func:`refine_input`.
    """
    if num_inputs < 1:
        raise DomainError("num_inputs must be >= 1")
    rng = rng if rng is not None else stream(sample.seed, sample.trial_index, "inputs")
    X = random_inputs(rng, sample.d, num_inputs)
    hs = _entropy_rows(output_spectra(sample, X), p)
    best = float(hs.min())
    if refine:
        for j in np.argsort(hs)[:refine_top]:
            best = min(best, refine_input(sample, X[:, j], p)[0])
    return best


def empirical_output_set_check(sample: ChannelSample, t: float, num_inputs: int = 1000,
                               slack: float = 0.05, rng: np.random.Generator | None = None) -> float:
    """Fraction of sampled output spectra within ``slack`` of the corner test."""
    rng = rng if rng is not None else stream(sample.seed, sample.trial_index, "inputs")
    X = random_inputs(rng, sample.d, num_inputs)
    spectra = output_spectra(sample, X)
    ok = [support_necessary_test(lam, t)[2] <= slack for lam in spectra]
    return float(np.mean(ok))


def workers() -> int:
    """Worker count from the ``THREADS`` environment variable (default 1)."""
    try:
        return max(1, int(os.environ.get("THREADS", "1")))
    except ValueError:
        return 1


def map_trials(fn, trials, n_workers: int | None = None) -> list:
    """Apply ``fn`` to each trial index; results come back in index order."""
    n_workers = n_workers or workers()
    trials = list(trials)
    if n_workers == 1:
        return [fn(i) for i in trials]
    with ThreadPoolExecutor(n_workers) as ex:
        return list(ex.map(fn, trials))
