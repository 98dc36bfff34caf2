"""
Where additivity first fails
============================

Scan the limiting entropy difference D(k, t) between the Bell-state output
of a conjugate pair and twice the single-channel minimum output entropy.
"""

import numpy as np

from freemoe.violation import asymptotic_check, entropy_diff, min_over_t, threshold_k

# just below and at the threshold
for k in (182, 183):
    t, d = min_over_t(k)
    print(f"k={k}: min_t D = {d:+.3e} at t = {t:.4f}")

print("thresholds:")
for label, args in [("p=1, free t", (1.0,)), ("p=1, HW bound", (1.0, "hw")), ("p=1, t=1/2", (1.0, "exact", 0.5)),
                    ("p=1, t=1/k", (1.0, "exact", "inverse-k")), ("p=2", (2.0,)), ("p=3", (3.0,)),
                    ("p=4", (4.0,)), ("p=inf", (np.inf,))]:
    print(f"  {label:>14}: k = {threshold_k(*args)[0]}")

# at t = 1/2 the violation creeps towards log 2, but slowly
for row in asymptotic_check(0.5, [10 ** j for j in range(2, 8)]):
    print(f"k={row['k']:>9}: D = {row['D']:+.5f}, gap to -log 2 = {row['gap']:.4f}")

# for t = 1/k the normalised violation D k / (-log k) climbs towards 1
for row in asymptotic_check("inverse-k", [10 ** j for j in (3, 5, 7, 9)]):
    print(f"k={row['k']:>11}: D k / (-log k) = {row['ratio']:.4f}")

print("D(1000, 0.5) in bits:", float(entropy_diff(1000, 0.5)) / np.log(2))
