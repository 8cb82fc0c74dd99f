"""Validated idempotents, their canonical block form and invariant subspaces.

For an idempotent T on C^n write R = R(T), N = N(T) and N* = N(T*) = R^⊥.
In the orthonormal splitting C^n = R ⊕ N*, T takes the block form

    T = [[I, X], [0, 0]],   X = -P_R|_N · A,   A = (P_{N*}|_N)^{-1},

and T = V P_R V^{-1} with V = [[I, -X], [0, I]].  The witness operator
W = A · P_{N*} has the same invariant subspaces as T.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    BadParameters,
    DegenerateGeometry,
    DimensionMismatch,
    IllConditionedWarning,
    NotIdempotent,
    PreconditionViolated,
)
from .numkernel import as_cmatrix, opnorm
from .subspace import (
    Subspace,
    intersect,
    is_invariant,
    leq,
    projector,
    random_unitary,
    DEFAULT_INVARIANCE_TOL,
)

__all__ = [
    "Idempotent",
    "AndoForm",
    "InvarianceComparison",
    "validate",
    "random_idempotent",
    "ando_form",
    "witness_operator",
    "invariance_equiv",
    "nullstar_invariant_check",
    "reducing_check",
    "lat_transport",
    "composition_operator",
    "KAPPA_WARN",
]

KAPPA_WARN = 1e8
KAPPA_SINGULAR = 1e13

# nonzero singular values of an idempotent are >= 1, so 1/2 splits range from roundoff
_RANK_CUT = 0.5


@dataclass(frozen=True, eq=False)
class Idempotent:
    """A square matrix that passed :func:`validate`, with its four subspaces."""

    T: np.ndarray
    residual: float
    range: Subspace
    null: Subspace
    null_star: Subspace
    range_star: Subspace

    @property
    def n(self):
        return self.T.shape[0]

    @property
    def rank(self):
        return self.range.dim

    @property
    def norm(self):
        return opnorm(self.T)


def default_tol(t):
    return 1e-8 * max(1.0, opnorm(t) ** 2)


def validate(t, tol=None):
    """Check T^2 = T and compute R(T), N(T), N(T*), R(T*).

    :param tol: acceptance bound on ||T^2 - T||, default 1e-8 * max(1, ||T||^2)
    :raises NotIdempotent: carrying the measured residual
    """
    t = as_cmatrix(t, square=True)
    if tol is None:
        tol = default_tol(t)
    residual = opnorm(t @ t - t)
    if residual > tol:
        raise NotIdempotent(residual, tol)
    n = t.shape[0]
    u, s, vh = np.linalg.svd(t)
    r = int(np.count_nonzero(s > _RANK_CUT))
    v = vh.conj().T
    t = t.copy()
    t.setflags(write=False)
    return Idempotent(
        T=t,
        residual=residual,
        range=Subspace(u[:, :r]),
        null=Subspace(v[:, r:n]),
        null_star=Subspace(u[:, r:n]),
        range_star=Subspace(v[:, :r]),
    )


def _as_idempotent(e):
    return e if isinstance(e, Idempotent) else validate(e)


def random_idempotent(n, r, skew=1.0, seed=None):
    """Random oblique projection of rank ``r`` on C^n.

    The range R is a Haar-random r-dimensional subspace.  The nullspace is
    the graph N = {skew·G y + y : y ∈ R^⊥} of an operator G: R^⊥ -> R with
    ||G|| = 1, so the largest principal angle between N and R^⊥ is
    atan(skew) and the smallest angle between R and N is at least
    π/2 - atan(skew).  ``skew = 0`` gives the orthogonal projection.
    """
    if n < 1 or not 0 <= r <= n or skew < 0:
        raise BadParameters(f"need n >= 1, 0 <= r <= n, skew >= 0; got {n}, {r}, {skew}")
    rng = np.random.default_rng(seed)
    q = random_unitary(n, rng)
    block = np.zeros((n, n), dtype=complex)
    block[:r, :r] = np.eye(r)
    if 0 < r < n and skew > 0:
        g = rng.standard_normal((r, n - r)) + 1j * rng.standard_normal((r, n - r))
        block[:r, r:] = -skew * g / np.linalg.norm(g, 2)
    return validate(q @ block @ q.conj().T)


@dataclass(frozen=True, eq=False)
class AndoForm:
    """Block data of an idempotent in the splitting C^n = R(T) ⊕ N(T*).

    ``X`` (r × (n-r)) and ``A`` ((n-r) × (n-r)) are coordinate matrices
    with respect to the orthonormal bases ``range_basis`` (R),
    ``null_star_basis`` (N*) and ``null_basis`` (N); ``V`` and ``V_inv``
    are n × n in standard coordinates.
    """

    X: np.ndarray
    A: np.ndarray
    V: np.ndarray
    V_inv: np.ndarray
    kappa: float
    range_basis: np.ndarray
    null_star_basis: np.ndarray
    null_basis: np.ndarray
    similarity_residual: float
    block_residual: float

    @property
    def frame(self):
        """Unitary [B_R, B_N*] whose columns realize the splitting."""
        return np.hstack([self.range_basis, self.null_star_basis])

    def A_operator(self):
        """A_T as an n × n matrix: zero on R(T), maps N(T*) onto N(T)."""
        return self.null_basis @ self.A @ self.null_star_basis.conj().T

    def X_operator(self):
        """X_T as an n × n matrix mapping N(T*) into R(T)."""
        return self.range_basis @ self.X @ self.null_star_basis.conj().T

    @property
    def kappa_V(self):
        return opnorm(self.V) * opnorm(self.V_inv)


def ando_form(e):
    """Canonical block form and similarity to the range projection.

    :raises DegenerateGeometry: if P_{N(T*)}|_{N(T)} is numerically singular
        or the reconstruction checks fail
    """
    e = _as_idempotent(e)
    t = e.T
    n, r = e.n, e.rank
    br, bns, bn = e.range.basis, e.null_star.basis, e.null.basis
    # restricted projection N -> N* in the bases (B_N, B_N*)
    m = bns.conj().T @ bn
    if n - r:
        sv = np.linalg.svd(m, compute_uv=False)
        kappa = float(sv[0] / sv[-1]) if sv[-1] > 0 else float("inf")
    else:
        kappa = 1.0
    # singular values of M are cosines of principal angles, so at most 1
    if kappa > KAPPA_SINGULAR or (n - r and sv[-1] < 1 / KAPPA_SINGULAR):
        raise DegenerateGeometry(f"P_N(T*)|_N(T) is numerically singular (kappa = {kappa:.3e})")
    a = np.linalg.inv(m) if n - r else np.zeros((0, 0), dtype=complex)
    x = -(br.conj().T @ bn) @ a

    frame = np.hstack([br, bns])
    v_blocks = np.eye(n, dtype=complex)
    v_blocks[:r, r:] = -x
    vinv_blocks = np.eye(n, dtype=complex)
    vinv_blocks[:r, r:] = x
    v = frame @ v_blocks @ frame.conj().T
    v_inv = frame @ vinv_blocks @ frame.conj().T

    scale = max(1.0, opnorm(t))
    kappa_v = opnorm(v) * opnorm(v_inv)
    # the ratio kappa can stay modest while ||A|| (and with it kappa(V)) blows up,
    # so both are screened
    if kappa > KAPPA_WARN or kappa_v > KAPPA_WARN:
        warnings.warn(f"ill-conditioned idempotent: kappa = {kappa:.3e}, kappa(V) = {kappa_v:.3e}",
                      IllConditionedWarning, stacklevel=2)
    sim_res = opnorm(t - v @ projector(e.range) @ v_inv) / scale
    expected = np.zeros((n, n), dtype=complex)
    expected[:r, :r] = np.eye(r)
    expected[:r, r:] = x
    block_res = opnorm(frame.conj().T @ t @ frame - expected) / scale
    bound = 1e-8 * kappa_v
    if sim_res > bound or block_res > bound:
        raise DegenerateGeometry(
            f"reconstruction failed: similarity {sim_res:.3e}, block {block_res:.3e}, bound {bound:.3e}")
    return AndoForm(X=x, A=a, V=v, V_inv=v_inv, kappa=kappa, range_basis=br,
                    null_star_basis=bns, null_basis=bn,
                    similarity_residual=sim_res, block_residual=block_res)


def witness_operator(e, form=None):
    """W_T = (P_{N(T*)}|_{N(T)})^{-1} P_{N(T*)} as an n × n matrix.

    Built from the restricted inverse, not from I - T; the two agree for an
    exact idempotent and tests use that as a cross-check.
    """
    e = _as_idempotent(e)
    form = form or ando_form(e)
    return form.A_operator() @ projector(e.null_star)


@dataclass(frozen=True)
class InvarianceComparison:
    under_T: bool
    under_W: bool
    residual_T: float
    residual_W: float

    @property
    def agree(self):
        return self.under_T == self.under_W


def invariance_equiv(e, s, tol=DEFAULT_INVARIANCE_TOL, w=None):
    """Invariance of ``s`` under T and under the witness W_T, side by side."""
    e = _as_idempotent(e)
    if s.ambient != e.n:
        raise DimensionMismatch(f"subspace of C^{s.ambient} vs operator on C^{e.n}")
    if w is None:
        w = witness_operator(e)
    vt = is_invariant(e.T, s, tol)
    vw = is_invariant(w, s, tol)
    return InvarianceComparison(vt.invariant, vw.invariant, vt.residual, vw.residual)


def nullstar_invariant_check(e, s, tol=DEFAULT_INVARIANCE_TOL, containment_tol=1e-7):
    """For S ⊆ N(T*): is S invariant under T?

    Equivalent to S ⊆ N(T) ∩ N(T*); returns ``(verdict, characterization)``
    so callers can compare the two.
    """
    e = _as_idempotent(e)
    if not leq(s, e.null_star, containment_tol):
        raise PreconditionViolated("S is not contained in N(T*)")
    verdict = bool(is_invariant(e.T, s, tol))
    characterization = leq(s, intersect(e.null, e.null_star, containment_tol), containment_tol)
    return verdict, characterization


def reducing_check(e, s, tol=DEFAULT_INVARIANCE_TOL, containment_tol=1e-7):
    """For S ⊆ R(T): does S reduce T (invariant under T and T*)?

    Equivalent to S ⊆ R(T) ∩ R(T*); returns ``(verdict, characterization)``.
    """
    e = _as_idempotent(e)
    if not leq(s, e.range, containment_tol):
        raise PreconditionViolated("S is not contained in R(T)")
    verdict = bool(is_invariant(e.T, s, tol)) and bool(is_invariant(e.T.conj().T, s, tol))
    characterization = leq(s, intersect(e.range, e.range_star, containment_tol), containment_tol)
    return verdict, characterization


def lat_transport(e, s, tol=DEFAULT_INVARIANCE_TOL, form=None):
    """Map an invariant subspace of P_{R(T)} to the invariant subspace V·S of T."""
    e = _as_idempotent(e)
    if not is_invariant(projector(e.range), s, tol):
        raise PreconditionViolated("S is not invariant under P_R(T)")
    form = form or ando_form(e)
    moved = Subspace.span(form.V @ s.basis) if s.dim else Subspace.zero(e.n)
    if not is_invariant(e.T, moved, tol):
        raise DegenerateGeometry("transported subspace failed the invariance certificate")
    return moved


def composition_operator(alpha, degree):
    """Matrix of f ↦ f(alpha) on polynomials of degree <= ``degree``.

    In the monomial basis {1, z, ..., z^N} (orthonormal in H^2 of the
    disc) the only non-zero row is the first: (1, alpha, ..., alpha^N).
    """
    alpha = complex(alpha)
    if not abs(alpha) < 1 or degree < 1:
        raise BadParameters(f"need |alpha| < 1 and degree >= 1; got {alpha}, {degree}")
    c = np.zeros((degree + 1, degree + 1), dtype=complex)
    c[0] = alpha ** np.arange(degree + 1)
    return c
