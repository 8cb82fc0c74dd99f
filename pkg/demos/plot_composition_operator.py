"""
A composition operator with a constant symbol
=============================================

On polynomials of degree <= N, f -> f(alpha) (the constant function) is an
idempotent. span{1, z} is invariant under it, span{z} is not.
"""

import numpy as np

from idemlab.idempotent import composition_operator, invariance_equiv, validate, witness_operator
from idemlab.subspace import Subspace

np.set_printoptions(precision=3, suppress=True)

alpha, degree = 0.5, 8
c = composition_operator(alpha, degree)
e = validate(c)
print("first row:", c[0].real)
print("rank:", e.rank)

# W f = f - f(alpha)
w = witness_operator(e)
f = np.zeros(degree + 1, dtype=complex)
f[:2] = [1, 2]                      # f = 1 + 2z, f(0.5) = 2
print("W (1 + 2z) =", (w @ f)[:3].real, "...")

for name, idx in [("span{1, z}", [0, 1]), ("span{z}", [1])]:
    cmp = invariance_equiv(e, Subspace.coordinate(degree + 1, idx))
    print(f"{name:11s} invariant under T: {cmp.under_T}, under W: {cmp.under_W}")

# with alpha = 0 every function is sent to its constant term, and z -> 0
c0 = validate(composition_operator(0.0, degree))
print("alpha = 0, span{z}:", invariance_equiv(c0, Subspace.coordinate(degree + 1, [1])).under_T)
