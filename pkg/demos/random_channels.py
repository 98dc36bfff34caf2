"""
Random channels at finite size
==============================

Sample Haar isometries, look at the Bell-state output of the conjugate
pair, and estimate the minimum output entropy from random inputs.
"""

import numpy as np

from freemoe import channel_mc as mc
from freemoe.entropy import renyi_entropy
from freemoe.violation import gamma_top, x_opt

k, t, n, seed = 4, 0.2, 300, 7
d = mc.input_dimension(k, n, t)
s = mc.sample_isometry(k, n, d, seed)
print(f"W is {s.isometry.shape}, max |W*W - I| = {np.abs(s.isometry.conj().T @ s.isometry - np.eye(d)).max():.1e}")

# Bell output: one large eigenvalue close to t + (1-t)/k^2, the rest flat
ev = mc.bell_output_spectrum(s).eigenvalues
print(f"top eigenvalue {ev[0]:.5f}, limit {gamma_top(k, t):.5f}; next {ev[1]:.5f}, limit {(1 - t) / k ** 2:.5f}")

# MOE from random inputs is far too pessimistic; local refinement gets close
h_star = renyi_entropy(x_opt(k, t))
print(f"limit H(x*) = {h_star:.4f}")
print(f"  2000 random inputs: {mc.empirical_moe(s, 1.0, 2000):.4f}")
print(f"  with refinement   : {mc.empirical_moe(s, 1.0, 2000, refine=True):.4f}")

# every sampled output spectrum sits inside the corner inequalities
print("fraction passing the corner test:", mc.empirical_output_set_check(s, t, 500, slack=0.05))
