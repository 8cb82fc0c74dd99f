"""Reference computations that share no code with the package."""

import mpmath
import numpy as np


def charpoly_roots(a, dps=50):
    """Eigenvalues as roots of det(λI - A), via Faddeev-LeVerrier in high precision."""
    with mpmath.workdps(dps):
        n = a.shape[0]
        m = mpmath.matrix([[mpmath.mpc(complex(x)) for x in row] for row in a])
        coeffs = [mpmath.mpc(1)]
        mk = mpmath.zeros(n, n)
        eye = mpmath.eye(n)
        for k in range(1, n + 1):
            mk = m * mk + coeffs[-1] * eye
            am = m * mk
            ck = -sum(am[i, i] for i in range(n)) / k
            coeffs.append(ck)
        roots = mpmath.polyroots(coeffs, maxsteps=400, extraprec=4 * dps)
        return np.array([complex(r) for r in roots])


def set_distance(x, y):
    x, y = np.asarray(x, complex), np.asarray(y, complex)
    if x.size == 0 and y.size == 0:
        return 0.0
    if x.size == 0 or y.size == 0:
        return np.inf
    d = np.abs(x[:, None] - y[None, :])
    return max(d.min(axis=1).max(), d.min(axis=0).max())


def orth_projector(vectors):
    """Orthogonal projector onto the column span, from the normal equations."""
    v = np.asarray(vectors, complex)
    return v @ np.linalg.pinv(v)
