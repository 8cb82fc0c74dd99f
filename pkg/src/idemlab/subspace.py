"""Closed subspaces of C^n stored by orthonormal bases."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch, NotComplementary
from .numkernel import DEFAULT_RANK_TOL, as_cmatrix, opnorm, svd_rank

__all__ = [
    "Subspace",
    "InvarianceVerdict",
    "projector",
    "leq",
    "gap",
    "intersect",
    "subspace_sum",
    "complement",
    "is_invariant",
    "oblique_decompose",
    "image",
    "random_unitary",
    "random_subspace",
    "DEFAULT_INVARIANCE_TOL",
]

DEFAULT_INVARIANCE_TOL = 1e-8
ORTHONORMALITY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class Subspace:
    """Subspace of C^n spanned by the orthonormal columns of ``basis``.

    A basis with zero columns is the zero subspace.
    """

    basis: np.ndarray

    def __post_init__(self):
        b = as_cmatrix(self.basis, name="basis")
        k = b.shape[1]
        if k > b.shape[0]:
            raise DimensionMismatch(f"{k} basis vectors in C^{b.shape[0]}")
        if k and np.max(np.abs(b.conj().T @ b - np.eye(k))) > ORTHONORMALITY_TOL * max(1, k):
            raise ValueError("basis columns are not orthonormal; use Subspace.span")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def ambient(self):
        return self.basis.shape[0]

    @property
    def dim(self):
        return self.basis.shape[1]

    @classmethod
    def span(cls, vectors, tol=DEFAULT_RANK_TOL, atol=0.0):
        """Orthonormalized column span of ``vectors`` at relative rank tolerance ``tol``."""
        v = as_cmatrix(vectors, name="vectors")
        return cls(svd_rank(v, tol=tol, atol=atol).range_basis)

    @classmethod
    def zero(cls, n):
        return cls(np.zeros((n, 0), dtype=complex))

    @classmethod
    def full(cls, n):
        return cls(np.eye(n, dtype=complex))

    @classmethod
    def coordinate(cls, n, indices):
        """Span of the standard basis vectors ``e_i`` for ``i`` in ``indices``."""
        return cls(np.eye(n, dtype=complex)[:, list(indices)])

    def __repr__(self):
        return f"Subspace(ambient={self.ambient}, dim={self.dim})"


def _same_ambient(*spaces):
    n = spaces[0].ambient
    for s in spaces[1:]:
        if s.ambient != n:
            raise DimensionMismatch(f"ambient dimensions {n} and {s.ambient} differ")
    return n


def projector(s):
    """Orthogonal projection P_S = B B* onto ``s``."""
    return s.basis @ s.basis.conj().T


def leq(s1, s2, tol=1e-8):
    """Containment test S1 <= S2 via ||(I - P_S2) B_S1|| <= tol."""
    _same_ambient(s1, s2)
    if s1.dim == 0:
        return True
    resid = s1.basis - s2.basis @ (s2.basis.conj().T @ s1.basis)
    return opnorm(resid) <= tol


def gap(s1, s2):
    """Gap metric ||P_S1 - P_S2|| (spectral norm)."""
    _same_ambient(s1, s2)
    d = projector(s1) - projector(s2)
    # roundoff in the SVD differs for d and -d; take both so gap is exactly symmetric
    return max(opnorm(d), opnorm(-d))


def complement(s):
    """Orthogonal complement of ``s``."""
    n = s.ambient
    if s.dim == 0:
        return Subspace.full(n)
    if s.dim == n:
        return Subspace.zero(n)
    # rank of B* is exactly dim, so drop it by column count rather than by tolerance
    _, _, vh = np.linalg.svd(s.basis.conj().T, full_matrices=True)
    return Subspace(vh[s.dim:].conj().T)


def intersect(s1, s2, tol=1e-8):
    """S1 ∩ S2 as the nullspace of the stacked complement projectors.

    Directions whose stacked residual is below ``tol`` count as common.
    """
    n = _same_ambient(s1, s2)
    eye = np.eye(n)
    stacked = np.vstack([eye - projector(s1), eye - projector(s2)])
    _, s, vh = np.linalg.svd(stacked)
    keep = s <= tol
    return Subspace(vh[keep].conj().T)


def subspace_sum(s1, s2, tol=DEFAULT_RANK_TOL):
    """Algebraic sum S1 + S2 (orthonormalized)."""
    n = _same_ambient(s1, s2)
    cat = np.hstack([s1.basis, s2.basis])
    if cat.shape[1] == 0:
        return Subspace.zero(n)
    return Subspace(svd_rank(cat, tol=tol).range_basis)


def image(t, s, tol=DEFAULT_RANK_TOL):
    """Span of T·S, with images of size ~roundoff treated as zero."""
    t = as_cmatrix(t)
    if t.shape[1] != s.ambient:
        raise DimensionMismatch(f"operator {t.shape} cannot act on C^{s.ambient}")
    if s.dim == 0:
        return Subspace.zero(t.shape[0])
    w = t @ s.basis
    floor = tol * max(1.0, opnorm(t))
    return Subspace(svd_rank(w, tol=tol, atol=floor).range_basis)


class InvarianceVerdict:
    """Outcome of an invariance test; truthy iff invariant."""

    __slots__ = ("invariant", "residual", "threshold")

    def __init__(self, invariant, residual, threshold):
        self.invariant = bool(invariant)
        self.residual = float(residual)
        self.threshold = float(threshold)

    def __bool__(self):
        return self.invariant

    def __repr__(self):
        return (f"InvarianceVerdict(invariant={self.invariant}, "
                f"residual={self.residual:.3e}, threshold={self.threshold:.3e})")


def is_invariant(t, s, tol=DEFAULT_INVARIANCE_TOL):
    """Test T·S ⊆ S by ||(I - P_S) T P_S|| <= tol * max(1, ||T||)."""
    t = as_cmatrix(t, square=True)
    if t.shape[0] != s.ambient:
        raise DimensionMismatch(f"operator of size {t.shape[0]} on C^{s.ambient}")
    threshold = tol * max(1.0, opnorm(t))
    if s.dim == 0:
        return InvarianceVerdict(True, 0.0, threshold)
    ts = t @ s.basis
    # ||(I - P_S) T P_S|| = ||(I - P_S) T B|| since B has orthonormal columns
    resid = opnorm(ts - s.basis @ (s.basis.conj().T @ ts))
    return InvarianceVerdict(resid <= threshold, resid, threshold)


def oblique_decompose(x, r, nsp, min_sine=1e-10):
    """Split ``x = x_R + x_N`` along the direct sum R ∔ N.

    :raises NotComplementary: if dimensions do not add up to n, or the
        stacked basis ``[B_R, B_N]`` has smallest singular value below
        ``min_sine`` (R and N nearly intersect)
    """
    n = _same_ambient(r, nsp)
    x = np.asarray(x, dtype=complex).reshape(n)
    if r.dim + nsp.dim != n:
        raise NotComplementary(f"dim R + dim N = {r.dim + nsp.dim} != {n}")
    basis = np.hstack([r.basis, nsp.basis])
    sv = np.linalg.svd(basis, compute_uv=False)
    if n and sv[-1] < min_sine:
        raise NotComplementary(f"R and N nearly intersect (sigma_min = {sv[-1]:.3e})")
    coef = np.linalg.solve(basis, x)
    x_r = r.basis @ coef[:r.dim]
    x_n = nsp.basis @ coef[r.dim:]
    return x_r, x_n


def random_unitary(n, rng=None):
    """Haar-distributed unitary from the QR factorization of a complex Gaussian."""
    rng = np.random.default_rng(rng)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_subspace(n, k, rng=None):
    """Uniformly random ``k``-dimensional subspace of C^n."""
    return Subspace(random_unitary(n, rng)[:, :k])
