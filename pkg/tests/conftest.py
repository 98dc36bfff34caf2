import numpy as np
import pytest
from scipy.optimize import minimize_scalar


def norm_oracle(x, t):
    """Independent (t)-norm: inf over v > max(x) of v - (1-t)/G(v).

    Brute-force log grid in the gap v - max(x), then a bounded scalar polish.
    Never touches the root equation.
    """
    x = np.asarray(x, dtype=float)
    top = x.max()
    c = top - x
    spread = max(c.max(), 1e-300)

    def h(d):
        return top + d - (1 - t) / np.mean(1.0 / (d + c))

    ds = spread * np.logspace(-14, 6, 4001)
    vals = np.array([h(d) for d in ds])
    j = int(np.argmin(vals))
    best = min(vals[j], top)
    if 0 < j < ds.size - 1:
        res = minimize_scalar(h, bounds=(ds[j - 1], ds[j + 1]), method="bounded",
                              options={"xatol": spread * 1e-15})
        best = min(best, res.fun)
    return best


def general_norm_oracle(x, t):
    """Operator norm of the compression for any real x: max(U, -L)."""
    x = np.asarray(x, dtype=float)
    up = norm_oracle(x - x.min(), t) + x.min()
    lo = -(norm_oracle(-x - (-x).min(), t) + (-x).min())
    return max(up, -lo)


def random_smooth_point(rng, k, t=None, positive=True):
    """Random point in the simplex with a strict maximum, and a t on the smooth branch."""
    x = rng.dirichlet(np.full(k, rng.choice([0.3, 1.0, 3.0])))
    if not positive:
        x[rng.integers(k)] = 0.0
        x /= x.sum()
    if t is None:
        t = rng.uniform(0.02, 0.95 * (1 - 1.0 / k))
    return x, t


@pytest.fixture
def rng():
    return np.random.default_rng(20240531)
