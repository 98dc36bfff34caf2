"""
The limit body of output spectra
================================

Test spectra against the corner inequalities and the full dual-norm
membership problem, and watch the exposed points stay below x*_t in every
l^p norm.
"""

import numpy as np

from freemoe.kkt_geometry import exposed_point, lemma_gap, membership, support_necessary_test
from freemoe.violation import x_opt

k, t = 4, 0.2
xs = x_opt(k, t)
print("x*_t =", xs)

candidates = {
    "x*_t": xs,
    "half way to uniform": 0.5 * xs + 0.5 / k,
    "pure e1": np.eye(k)[0],
}
for name, lam in candidates.items():
    ok, m, margin = support_necessary_test(np.sort(lam)[::-1], t)
    v = membership(lam, t)
    print(f"{name:>20}: corner test {'pass' if ok else 'fail'} (worst m={m}, margin {margin:+.2e}), "
          f"membership {v.status.value} (slack {v.slack:+.2e})")

# exposed points are gradients; none beats x*_t in any l^p norm
rng = np.random.default_rng(0)
pts = np.array([exposed_point(rng.exponential(size=k), t) for _ in range(2000)])
for p in (1.5, 2, 3, np.inf):
    print(f"p={p}: max over samples {np.linalg.norm(pts, p, axis=1).max():.6f}  vs x* {np.linalg.norm(xs, p):.6f}")

# the power-sum inequality behind the ascent argument
print("lemma gap on (2,1,1):", lemma_gap([2, 1, 1], 2), " on (3,2,1):", lemma_gap([3, 2, 1], 2))
