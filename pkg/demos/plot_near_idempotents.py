"""
Near-idempotents and nearly commuting pairs
===========================================

A matrix with ||T^2 - T|| small is close to an exact idempotent: 0, I, or
the Riesz projection onto its eigenvalues near 1. Nearly commuting pairs of
idempotents split into three cases through R = (T1 - T2)^2.
"""

import numpy as np

from idemlab.essential import converse_checks, example54, nearest_exact_idempotent, pair_case_analysis
from idemlab.idempotent import random_idempotent

rng = np.random.default_rng(1)
noise = rng.standard_normal((6, 6))
noise /= np.linalg.norm(noise, 2)

for name, s0 in [("zero", np.zeros((6, 6))), ("identity", np.eye(6)),
                 ("rank 2", random_idempotent(6, 2, 1.0, rng).T)]:
    for eps in [1e-6, 1e-2]:
        cls = nearest_exact_idempotent(s0 + eps * noise)
        print(f"{name:8s} eps={eps:.0e}: {cls.case.value:12s} ||T - S|| / eps = {cls.distance / eps:.2f}")

# commuting diagonal pairs, one per case
cases = [(np.diag([1.0, 0, 1, 0]), np.diag([0.0, 1, 0, 1])),
         (np.diag([1.0, 0, 1, 0]), np.diag([1.0, 0, 1, 0])),
         (np.diag([1.0, 0, 1, 0]), np.diag([1.0, 0, 0, 1]))]
for t1, t2 in cases:
    res = pair_case_analysis(t1, t2)
    print(res.case.value, "residual", res.defining_residual)

# three products vanish on R(S), yet the commutator has norm sqrt(2)
ex = example54(np.eye(2), np.eye(2))
print({k: round(v, 6) for k, v in ex.report.items()})
print("converse bounds hold:", converse_checks(ex.T1, ex.T2).bounds_hold)
