"""Dense complex linear-algebra kernels.

Eigenvalues are computed in-tree (permutation/scaling balance, Householder
Hessenberg reduction, Wilkinson-shifted QR with Givens rotations).  The SVD
and LU solves delegate to LAPACK through :mod:`numpy.linalg`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NonConvergence, Singular

__all__ = [
    "SpectrumReport",
    "SVDRank",
    "as_cmatrix",
    "opnorm",
    "eig",
    "balance",
    "hessenberg",
    "svd_rank",
    "solve",
    "resolvent",
    "hausdorff",
    "DEFAULT_RANK_TOL",
]

UNIT_ROUNDOFF = np.finfo(float).eps / 2
DEFAULT_RANK_TOL = 1e-10


def as_cmatrix(a, square=False, name="matrix"):
    """Coerce ``a`` to a finite 2-D complex128 array."""
    m = np.asarray(a, dtype=complex)
    if m.ndim == 1:
        m = m.reshape(-1, 1)
    if m.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} has non-finite entries")
    if square and m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"{name} must be square, got shape {m.shape}")
    return m


def opnorm(a):
    """Spectral norm; 0 for empty matrices."""
    a = np.asarray(a)
    if a.size == 0:
        return 0.0
    return float(np.linalg.norm(a, 2))


@dataclass(frozen=True)
class SpectrumReport:
    """Eigenvalues with multiplicity, in no particular order."""

    eigenvalues: np.ndarray

    @property
    def spectral_radius(self):
        if self.eigenvalues.size == 0:
            return 0.0
        return float(np.max(np.abs(self.eigenvalues)))

    @property
    def dim(self):
        return int(self.eigenvalues.size)

    def __len__(self):
        return self.dim


def balance(a):
    """Permute and diagonally scale ``a`` (LAPACK xGEBAL style).

    Returns ``(b, lo, hi)`` where ``b`` is similar to ``a`` and is block
    upper triangular with ``b[:lo, :lo]`` and ``b[hi:, hi:]`` upper
    triangular; only ``b[lo:hi, lo:hi]`` needs an iterative eigensolver.
    Scaling factors are powers of two, so the similarity is exact.
    """
    b = np.array(a, dtype=complex)
    n = b.shape[0]
    lo, hi = 0, n

    def swap(i, j):
        if i != j:
            b[[i, j], :] = b[[j, i], :]
            b[:, [i, j]] = b[:, [j, i]]

    # rows with zero off-diagonal part isolate an eigenvalue at the bottom
    found = True
    while found and hi > lo:
        found = False
        for j in range(hi - 1, lo - 1, -1):
            row = b[j, lo:hi]
            if not np.any(np.delete(row, j - lo)):
                swap(j, hi - 1)
                hi -= 1
                found = True
                break

    # columns with zero off-diagonal part isolate an eigenvalue at the top
    found = True
    while found and hi > lo:
        found = False
        for j in range(lo, hi):
            col = b[lo:hi, j]
            if not np.any(np.delete(col, j - lo)):
                swap(j, lo)
                lo += 1
                found = True
                break

    if hi - lo > 1:
        radix = 2.0
        converged = False
        sweeps = 0
        while not converged and sweeps < 100:
            converged = True
            sweeps += 1
            for i in range(lo, hi):
                # off-diagonal sums taken directly: subtracting |b_ii| from the full
                # sum cancels catastrophically and can make the scaling oscillate
                col = np.abs(b[lo:hi, i])
                row = np.abs(b[i, lo:hi])
                c = np.sum(col[:i - lo]) + np.sum(col[i - lo + 1:])
                r = np.sum(row[:i - lo]) + np.sum(row[i - lo + 1:])
                if c == 0.0 or r == 0.0:
                    continue
                g = r / radix
                f = 1.0
                s = c + r
                while c < g:
                    f *= radix
                    c *= radix * radix
                while c >= r * radix:
                    f /= radix
                    c /= radix * radix
                if (c + r) / f < 0.95 * s:
                    converged = False
                    b[i, :] /= f
                    b[:, i] *= f
    return b, lo, hi


def hessenberg(a):
    """Reduce ``a`` to upper Hessenberg form by Householder similarities."""
    h = np.array(a, dtype=complex)
    n = h.shape[0]
    for k in range(n - 2):
        x = h[k + 1:, k]
        tail = np.linalg.norm(x[1:])
        if tail == 0.0:
            continue
        xnorm = np.hypot(abs(x[0]), tail)
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * xnorm
        v /= np.linalg.norm(v)
        h[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ h[k + 1:, k:])
        h[:, k + 1:] -= 2.0 * np.outer(h[:, k + 1:] @ v, v.conj())
        h[k + 2:, k] = 0.0
    return h


def _givens(a, b):
    """Unitary G = [[c, s], [-conj(s), c]] with G @ [a, b] = [r, 0]."""
    if b == 0:
        return 1.0, 0.0j
    if a == 0:
        return 0.0, 1.0 + 0.0j
    r = np.hypot(abs(a), abs(b))
    c = abs(a) / r
    s = (a / abs(a)) * np.conj(b) / r
    return c, s


def _wilkinson_shift(w):
    a, b, c, d = w[-2, -2], w[-2, -1], w[-1, -2], w[-1, -1]
    tr = a + d
    disc = np.sqrt((a - d) ** 2 / 4 + b * c)
    mu1 = tr / 2 + disc
    mu2 = tr / 2 - disc
    return mu1 if abs(mu1 - d) < abs(mu2 - d) else mu2


def _qr_step(w, mu):
    """One explicit shifted QR step W - mu I = QR, W <- RQ + mu I, in place."""
    m = w.shape[0]
    idx = np.arange(m)
    w[idx, idx] -= mu
    rots = []
    for k in range(m - 1):
        c, s = _givens(w[k, k], w[k + 1, k])
        rows = w[k:k + 2, k:]
        top = c * rows[0] + s * rows[1]
        bot = -np.conj(s) * rows[0] + c * rows[1]
        rows[0], rows[1] = top, bot
        w[k + 1, k] = 0.0
        rots.append((c, s))
    for k, (c, s) in enumerate(rots):
        cols = w[:k + 2, k:k + 2]
        left = c * cols[:, 0] + np.conj(s) * cols[:, 1]
        right = -s * cols[:, 0] + c * cols[:, 1]
        cols[:, 0], cols[:, 1] = left, right
    w[idx, idx] += mu


def _hessenberg_eigvals(h, max_iter):
    n = h.shape[0]
    vals = np.empty(n, dtype=complex)
    if n == 0:
        return vals, 0
    anorm = np.linalg.norm(h)
    hi = n - 1
    iters = 0
    since_deflation = 0
    while hi >= 0:
        if hi == 0:
            vals[0] = h[0, 0]
            break
        # locate the bottom of the unreduced block ending at hi
        lo = hi
        while lo > 0:
            sub = abs(h[lo, lo - 1])
            scale = abs(h[lo, lo]) + abs(h[lo - 1, lo - 1])
            if sub <= UNIT_ROUNDOFF * scale or sub <= UNIT_ROUNDOFF * anorm:
                h[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            vals[hi] = h[hi, hi]
            hi -= 1
            since_deflation = 0
            continue
        if iters >= max_iter:
            raise NonConvergence(f"shifted QR did not converge in {max_iter} sweeps")
        w = h[lo:hi + 1, lo:hi + 1]
        if since_deflation in (10, 20):
            # exceptional shift to break cycles
            mu = w[-1, -1] + 0.75 * abs(w[-1, -2]) * np.exp(1j * since_deflation)
        else:
            mu = _wilkinson_shift(w)
        _qr_step(w, mu)
        iters += 1
        since_deflation += 1
    return vals, iters


def eig(a, max_sweeps=None):
    """Eigenvalues of a square matrix, with multiplicity.

    :param a: square complex matrix, n >= 1
    :param max_sweeps: iteration cap, default ``30 * n``
    :raises NonConvergence: if the QR iteration exceeds the cap
    """
    a = as_cmatrix(a, square=True)
    n = a.shape[0]
    if n == 0:
        raise DimensionMismatch("eig needs n >= 1")
    if max_sweeps is None:
        max_sweeps = 30 * n
    b, lo, hi = balance(a)
    vals = np.empty(n, dtype=complex)
    vals[:lo] = np.diag(b)[:lo]
    vals[hi:] = np.diag(b)[hi:]
    if hi > lo:
        h = hessenberg(b[lo:hi, lo:hi])
        vals[lo:hi], _ = _hessenberg_eigvals(h, max_sweeps)
    return SpectrumReport(vals)


class SVDRank(NamedTuple):
    singular_values: np.ndarray
    rank: int
    range_basis: np.ndarray
    null_basis: np.ndarray


def svd_rank(a, tol=DEFAULT_RANK_TOL, atol=0.0):
    """Numerical rank with orthonormal range and nullspace bases.

    ``rank = #{sigma_i > max(tol * sigma_1, atol)}``.  ``atol`` is an
    absolute floor used when a matrix may be pure roundoff.
    """
    a = as_cmatrix(a)
    rows, cols = a.shape
    if rows == 0 or cols == 0:
        return SVDRank(np.zeros(0), 0, np.zeros((rows, 0), complex), np.eye(cols, dtype=complex))
    u, s, vh = np.linalg.svd(a, full_matrices=True)
    cut = max(tol * s[0], atol) if s.size else 0.0
    rank = int(np.count_nonzero(s > cut)) if s[0] > 0 else 0
    return SVDRank(s, rank, u[:, :rank], vh[rank:].conj().T)


def solve(a, b):
    """Solve ``A X = B``; ``a`` may be a stack of shape (..., n, n).

    :raises Singular: when LU fails or ``||A|| ||X|| / ||B||`` exceeds
        ``0.1 / u``, i.e. the system is numerically singular
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    if a.shape[-1] != a.shape[-2] or a.shape[-1] != b.shape[-2]:
        raise DimensionMismatch(f"cannot solve {a.shape} against {b.shape}")
    b_full = np.broadcast_to(b, a.shape[:-2] + b.shape[-2:])
    try:
        x = np.linalg.solve(a, b_full)
    except np.linalg.LinAlgError as exc:
        raise Singular(str(exc)) from exc
    if not np.all(np.isfinite(x)):
        raise Singular("non-finite solution")
    an = np.linalg.norm(a, ord=1, axis=(-2, -1))
    xn = np.linalg.norm(x, ord=1, axis=(-2, -1))
    bn = np.linalg.norm(b_full, ord=1, axis=(-2, -1))
    with np.errstate(divide="ignore", invalid="ignore"):
        kappa_lb = np.where(bn > 0, an * xn / bn, 0.0)
    if np.any(kappa_lb > 0.1 / UNIT_ROUNDOFF):
        raise Singular(f"condition estimate {np.max(kappa_lb):.3e} too large")
    return x


def resolvent(t, lam):
    """(lam I - T)^{-1}; ``lam`` may be an array of points (stacked output)."""
    t = as_cmatrix(t, square=True)
    n = t.shape[0]
    lam = np.asarray(lam, dtype=complex)
    shifted = lam[..., None, None] * np.eye(n) - t
    return solve(shifted, np.eye(n, dtype=complex))


def hausdorff(x, y):
    """Symmetric Hausdorff distance between finite point sets in C.

    Two empty sets are at distance 0; empty vs non-empty is ``inf``.
    """
    x = np.asarray(x, dtype=complex).ravel()
    y = np.asarray(y, dtype=complex).ravel()
    if x.size == 0 and y.size == 0:
        return 0.0
    if x.size == 0 or y.size == 0:
        return float("inf")
    d = np.abs(x[:, None] - y[None, :])
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))
