"""Common invariant subspaces of idempotent pairs with nilpotent commutator,
and the reduction of a nilpotent operator to such a pair."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DimensionMismatch,
    ExtractionFailed,
    PreconditionViolated,
    SpectrumViolation,
)
from .idempotent import Idempotent, ando_form, validate
from .numkernel import SpectrumReport, as_cmatrix, eig, opnorm, svd_rank
from .spectral import Contour, is_quasinilpotent_desk, nilpotency_residual, riesz_projection
from .subspace import Subspace, gap, image, is_invariant, subspace_sum

__all__ = [
    "IdempotentPair",
    "CommonInvariantResult",
    "ExtractionReport",
    "make_pair",
    "nrr_pair",
    "common_invariant_qnil",
    "split_common_subspace",
    "extract_invariant_for_A",
    "extract_invariant_details",
    "CERTIFY_TOL",
]

CERTIFY_TOL = 1e-7
SPECTRUM_TOL = 1e-6


@dataclass(frozen=True, eq=False)
class IdempotentPair:
    T1: Idempotent
    T2: Idempotent
    D: np.ndarray
    commutator_spectrum: SpectrumReport

    @property
    def n(self):
        return self.T1.n


def make_pair(t1, t2):
    """Validate two idempotents and attach their commutator D = T1 T2 - T2 T1."""
    e1 = t1 if isinstance(t1, Idempotent) else validate(t1)
    e2 = t2 if isinstance(t2, Idempotent) else validate(t2)
    if e1.n != e2.n:
        raise DimensionMismatch(f"pair of sizes {e1.n} and {e2.n}")
    d = e1.T @ e2.T - e2.T @ e1.T
    return IdempotentPair(e1, e2, d, eig(d))


def nrr_pair(a):
    """T1 = [[A, A], [I - A, I - A]], T2 = [[I, 0], [0, 0]] on C^n ⊕ C^n.

    σ(T1 T2) = σ(A) ∪ {0}; nilpotent A gives a nilpotent commutator.
    """
    a = as_cmatrix(a, square=True)
    n = a.shape[0]
    eye = np.eye(n)
    t1 = np.block([[a, a], [eye - a, eye - a]])
    t2 = np.zeros((2 * n, 2 * n), dtype=complex)
    t2[:n, :n] = eye
    return make_pair(t1, t2)


@dataclass(frozen=True, eq=False)
class CommonInvariantResult:
    """Certified common invariant subspace M with the construction's pieces.

    ``intermediate`` holds ``S`` (invariant subspace of the compression M0,
    embedded in C^n), ``Q`` = V1^{-1} T2 V1, ``V1``, ``M0``, the branch used
    to pick S, and which ordering of the pair produced M.
    """

    M: Subspace
    residual_T1: float
    residual_T2: float
    intermediate: dict = field(repr=False)


def _invariant_subspace_of_compression(m0):
    """An invariant subspace of M0 whose spectrum sits in {0, 1}.

    Returns ``(coords, branch)`` with ``coords`` an orthonormal r × s matrix.
    """
    r = m0.shape[0]
    spec = eig(m0)
    ev = spec.eigenvalues
    dist01 = np.minimum(np.abs(ev), np.abs(ev - 1))
    if np.max(dist01) > SPECTRUM_TOL:
        # defective clusters scatter eigenvalues by ~u^(1/k); fall back to the
        # exact polynomial certificate (M0^2 - M0)^r = 0
        z = m0 @ m0 - m0
        if nilpotency_residual(z) > 1e-8 or np.max(dist01) > 0.25:
            raise SpectrumViolation(f"compression spectrum strays {np.max(dist01):.3e} from {{0, 1}}")
    near0 = np.abs(ev) < 0.5
    if near0.any() and not near0.all():
        res = riesz_projection(m0, Contour(0.0, 0.5), spec)
        return res.range.basis, "riesz-0"
    lam = 0.0 if near0.all() else 1.0
    nil = m0 - lam * np.eye(r)
    if opnorm(nil) <= 1e-10 * max(1.0, opnorm(m0)):
        # M0 is scalar: every subspace is invariant
        k = 1 if r > 1 else r
        return np.eye(r, dtype=complex)[:, :k], f"scalar-{lam:g}"
    power = np.eye(r, dtype=complex)
    for k in range(1, r + 1):
        power = power @ nil
        kernel = svd_rank(power).null_basis
        if 0 < kernel.shape[1] < r:
            return kernel, f"kernel-{lam:g}-{k}"
    return np.eye(r, dtype=complex), "whole-range"


def _construct(e1, t2, tol):
    """Run the construction with e1 in the role of T1; None if uncertified."""
    n = e1.n
    form = ando_form(e1)
    v1, v1_inv = form.V, form.V_inv
    q = v1_inv @ t2 @ v1
    br, bns = form.range_basis, form.null_star_basis
    m0 = br.conj().T @ q @ br
    coords, branch = _invariant_subspace_of_compression(m0)
    s = Subspace.span(br @ coords)
    q_s = q @ s.basis
    tail = bns @ (bns.conj().T @ q_s)
    # closure of P_{N(T1*)} Q S is the span itself in finite dimension
    m_pre = subspace_sum(s, Subspace.span(tail, atol=1e-10 * max(1.0, opnorm(q))))
    m = Subspace.span(v1 @ m_pre.basis)
    v_t1 = is_invariant(e1.T, m, tol)
    v_t2 = is_invariant(t2, m, tol)
    info = {"S": s, "Q": q, "V1": v1, "M0": m0, "X": form.X, "branch": branch}
    if 0 < m.dim < n and v_t1 and v_t2:
        return m, v_t1.residual, v_t2.residual, info
    return None


def common_invariant_qnil(pair, tol=CERTIFY_TOL):
    """Non-trivial subspace invariant under both idempotents of ``pair``.

    Follows the construction through the block form of T1: an invariant
    subspace S of M0 = P_R(T1) Q|_R(T1) is enlarged to S ⊕ P_N(T1*) Q S and
    mapped back by V1.  If certification fails for (T1, T2) the symmetric
    variants (I - T1, T2), (T2, T1), (I - T2, T1), which share the common
    invariant subspaces and have commutator ±D, are tried in turn.

    :raises PreconditionViolated: D not quasinilpotent, or R(T1) trivial
    :raises ExtractionFailed: no variant produced a certified subspace
    """
    n = pair.n
    if not is_quasinilpotent_desk(pair.D, spec=pair.commutator_spectrum):
        raise PreconditionViolated("commutator is not quasinilpotent at desk tolerance")
    if not 0 < pair.T1.rank < n:
        raise PreconditionViolated("R(T1) is trivial; use the trivial subspace directly")
    eye = np.eye(n)
    t1, t2 = pair.T1, pair.T2
    variants = [("T1,T2", t1, t2.T)]
    variants.append(("I-T1,T2", validate(eye - t1.T), t2.T))
    variants.append(("T2,T1", t2, t1.T))
    variants.append(("I-T2,T1", validate(eye - t2.T), t1.T))
    for label, first, second in variants:
        if not 0 < first.rank < n:
            continue
        out = _construct(first, second, tol)
        if out is None:
            continue
        m, r_first, r_second, info = out
        info["ordering"] = label
        if label.endswith("T2"):
            r1, r2 = r_first, r_second
        else:
            r1, r2 = r_second, r_first
        return CommonInvariantResult(m, r1, r2, info)
    raise ExtractionFailed("no certified common invariant subspace")


def split_common_subspace(pair, s, tol=CERTIFY_TOL):
    """Split a common invariant subspace as S = T2 S ∔ (I - T2) S."""
    if not (is_invariant(pair.T1.T, s, tol) and is_invariant(pair.T2.T, s, tol)):
        raise PreconditionViolated("S is not invariant under both idempotents")
    t2 = pair.T2.T
    s_range = image(t2, s)
    s_null = image(np.eye(pair.n) - t2, s)
    if gap(subspace_sum(s_range, s_null), s) > tol:
        raise PreconditionViolated("T2 S + (I - T2) S does not recover S")
    return s_range, s_null


@dataclass(frozen=True, eq=False)
class ExtractionReport:
    subspace: Subspace
    residual: float
    branch: str
    pair: IdempotentPair | None = field(default=None, repr=False)
    common: CommonInvariantResult | None = field(default=None, repr=False)
    components: tuple | None = field(default=None, repr=False)


def extract_invariant_details(a, tol=CERTIFY_TOL):
    """Certified non-trivial invariant subspace of a nilpotent ``a``, with provenance.

    Runs the pair pipeline first: for a common invariant subspace S of the
    pair, the first-block part of T2 S and the second-block part of
    (I - T2) S are both A-invariant.  If neither is non-trivial, falls back
    to N(A), the range of A, or (for A = 0) the first coordinate axis.
    """
    a = as_cmatrix(a, square=True)
    n = a.shape[0]
    if n < 2:
        raise PreconditionViolated("need n >= 2 for a non-trivial subspace")
    if not is_quasinilpotent_desk(a):
        raise PreconditionViolated("A is not quasinilpotent at desk tolerance")

    def certified(sub):
        if not 0 < sub.dim < n:
            return None
        v = is_invariant(a, sub, tol)
        return v if v else None

    pair = nrr_pair(a)
    common = components = None
    try:
        common = common_invariant_qnil(pair, tol)
        s_range, s_null = split_common_subspace(pair, common.M, tol)
        components = (s_range, s_null)
        first = Subspace.span(s_range.basis[:n], atol=1e-12) if s_range.dim else Subspace.zero(n)
        second = Subspace.span(s_null.basis[n:], atol=1e-12) if s_null.dim else Subspace.zero(n)
        for label, cand in (("pair:T2S", first), ("pair:(I-T2)S", second)):
            v = certified(cand)
            if v:
                return ExtractionReport(cand, v.residual, label, pair, common, components)
    except (ExtractionFailed, PreconditionViolated, SpectrumViolation):
        pass

    info = svd_rank(a)
    for label, cand in (("kernel", Subspace(info.null_basis)),
                        ("range", Subspace(info.range_basis))):
        v = certified(cand)
        if v:
            return ExtractionReport(cand, v.residual, label, pair, common, components)
    cand = Subspace.coordinate(n, [0])
    v = certified(cand)
    if v:
        return ExtractionReport(cand, v.residual, "zero-operator", pair, common, components)
    raise ExtractionFailed("no certified non-trivial invariant subspace")


def extract_invariant_for_A(a, tol=CERTIFY_TOL):
    """Certified non-trivial invariant subspace of a nilpotent operator."""
    return extract_invariant_details(a, tol).subspace
