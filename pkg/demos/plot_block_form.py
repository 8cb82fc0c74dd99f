"""
Block form of an oblique projection
===================================

An idempotent T is a projection onto R(T) along N(T). In the orthonormal
splitting R(T) + R(T)^perp it looks like [[I, X], [0, 0]], and it is
similar to the orthogonal projection onto its range.
"""

import numpy as np

from idemlab.idempotent import ando_form, random_idempotent, validate, witness_operator
from idemlab.numkernel import opnorm
from idemlab.subspace import projector

np.set_printoptions(precision=3, suppress=True)

# the smallest interesting case: projection onto e1 along (1, -1)
t0 = validate([[1.0, 1.0], [0.0, 0.0]])
form = ando_form(t0)
print("X operator:\n", form.X_operator().real)
print("V:\n", form.V.real)

# a random skewed projection in C^8 of rank 3
e = random_idempotent(8, 3, skew=2.0, seed=7)
form = ando_form(e)
print("kappa(V) =", round(form.kappa_V, 2))

# T = V P V^-1
recon = form.V @ projector(e.range) @ form.V_inv
print("||T - V P V^-1|| =", opnorm(e.T - recon))

# the witness operator is built from the restricted inverse, and equals I - T
w = witness_operator(e, form)
print("||W - (I - T)|| =", opnorm(w - (np.eye(8) - e.T)))

# more skew, worse conditioning
for skew in [0.0, 1.0, 10.0, 100.0]:
    f = ando_form(random_idempotent(8, 3, skew, seed=1))
    print(f"skew {skew:6.1f}: kappa(V) = {f.kappa_V:10.1f}, residual {f.similarity_residual:.1e}")
