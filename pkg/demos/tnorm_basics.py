"""
The (t)-norm on a small vector
==============================

Evaluate the norm, its closed form on indicator vectors, its gradient and
the shift that minimises it along the all-ones direction.
"""

import numpy as np

from freemoe import tnorm
from freemoe.tnorm import gradient, hessian, min_shift, phi

# the basic example: x = (1, 0) compressed at ratio t = 1/4
r = tnorm([1.0, 0.0], 0.25)
print("value", r.value, "root", r.w, r.branch.value)

# on indicator vectors the norm has a closed form
k, t = 10, 0.3
for j in (1, 3, 6, 7):
    x = np.r_[np.ones(j), np.zeros(k - j)]
    print(f"j={j}: norm {tnorm(x, t).value:.12f}  closed form {phi(j / k, t) if j / k + t < 1 else 1.0:.12f}")

# once the top multiplicity reaches (1 - t) k the norm is just the max
print("sup branch:", tnorm(np.r_[np.ones(7), np.zeros(3)], 0.3))

# the gradient is a probability vector that keeps the order of x
x = np.array([0.5, 0.3, 0.15, 0.05])
g = gradient(x, 0.2)
print("gradient", g, "sum", g.sum(), "<g,x> =", g @ x, "norm =", tnorm(x, 0.2).value)

# the Hessian kills both x and the constant vector
H = hessian(x, 0.2)
print("|H x| =", np.abs(H @ x).max(), " |H 1| =", np.abs(H.sum(axis=1)).max())

# along x + s 1 the norm is a V with vertex s0
s0, m = min_shift(x, 0.2)
print(f"s0 = {s0:.6f}, minimum {m:.6f}")
