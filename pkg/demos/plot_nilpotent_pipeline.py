"""
From a nilpotent operator to an idempotent pair and back
========================================================

A nilpotent A gives the pair T1 = [[A, A], [I - A, I - A]], T2 = diag(I, 0)
whose commutator is nilpotent. A common invariant subspace of the pair,
built through the block form of T1, yields an invariant subspace of A.
"""

import numpy as np

from idemlab.numkernel import eig
from idemlab.pairs import extract_invariant_details, nrr_pair
from idemlab.spectral import is_quasinilpotent_desk
from idemlab.subspace import is_invariant

np.set_printoptions(precision=3, suppress=True)

rng = np.random.default_rng(3)
a = np.triu(rng.standard_normal((6, 6)), 1)

pair = nrr_pair(a)
print("sigma(T1 T2):", eig(pair.T1.T @ pair.T2.T).eigenvalues.real)
print("commutator quasinilpotent:", is_quasinilpotent_desk(pair.D))

rep = extract_invariant_details(a)
print("branch:", rep.branch)
print("common subspace M: dim", rep.common.M.dim, "built via", rep.common.intermediate["ordering"])
print("T2 M, (I - T2) M dims:", rep.components[0].dim, rep.components[1].dim)
print("invariant subspace of A: dim", rep.subspace.dim, "residual", rep.residual)
print("independent check:", is_invariant(a, rep.subspace, 1e-7))

# a single Jordan block has only the flag span{e1..ek} as invariant subspaces
j = np.diag(np.ones(4), 1)
s = extract_invariant_details(j).subspace
print("Jordan block: basis\n", np.abs(s.basis))
