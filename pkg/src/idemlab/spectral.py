"""Spectra, Riesz projections by contour quadrature, and spectral identities
for pairs of idempotents."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    ContourTooClose,
    DimensionMismatch,
    NoSpectralGap,
    QuadratureNotConverged,
)
from .idempotent import Idempotent
from .numkernel import SpectrumReport, as_cmatrix, eig, hausdorff, opnorm, resolvent
from .subspace import Subspace, is_invariant

__all__ = [
    "SpectrumReport",
    "Contour",
    "RieszResult",
    "PairSpectraReport",
    "spectrum",
    "is_quasinilpotent_desk",
    "nilpotency_residual",
    "riesz_projection",
    "restricted_spectrum",
    "product_difference_identity",
    "commutator_identity",
    "cluster_contour",
    "DEFAULT_NODES",
]

DEFAULT_NODES = 256
SEPARATION = 1e-3
QUADRATURE_TOL = 1e-9


def spectrum(t):
    return eig(t)


def nilpotency_residual(t):
    """||T^n|| / max(1, ||T||)^n, which vanishes exactly for nilpotent T."""
    t = as_cmatrix(t, square=True)
    n = t.shape[0]
    p = np.linalg.matrix_power(t, n)
    return opnorm(p) / max(1.0, opnorm(t)) ** n


def is_quasinilpotent_desk(t, tol=1e-8, spec=None):
    """spectral_radius(T) <= tol * max(1, ||T||).

    When the radius test passes, ||T^n|| is cross-checked against the same
    relative tolerance and a warning is raised on disagreement.
    """
    t = as_cmatrix(t, square=True)
    spec = spec or eig(t)
    if spec.spectral_radius > tol * max(1.0, opnorm(t)):
        return False
    res = nilpotency_residual(t)
    if res > tol:
        warnings.warn(f"spectral radius passes but ||T^n|| check gives {res:.3e}", RuntimeWarning,
                      stacklevel=2)
    return True


@dataclass(frozen=True)
class Contour:
    """Positively oriented circle sampled at ``nodes`` equispaced points."""

    center: complex
    radius: float
    nodes: int = DEFAULT_NODES

    def __post_init__(self):
        if not self.radius > 0:
            raise ValueError("radius must be positive")
        if self.nodes < 16:
            raise ValueError("need at least 16 nodes")
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "radius", float(self.radius))

    def distances(self, eigenvalues):
        """Signed distance |λ - c| - r of each eigenvalue to the circle."""
        return np.abs(np.asarray(eigenvalues) - self.center) - self.radius

    def check(self, spec):
        """Raise :class:`ContourTooClose` if an eigenvalue lies within radius·1e-3 of the circle."""
        d = self.distances(spec.eigenvalues)
        if d.size and np.min(np.abs(d)) < SEPARATION * self.radius:
            raise ContourTooClose(
                f"eigenvalue at distance {np.min(np.abs(d)):.3e} from circle of radius {self.radius}")
        return self

    def inside(self, eigenvalues):
        ev = np.asarray(eigenvalues)
        return ev[self.distances(ev) < 0]

    def outside(self, eigenvalues):
        ev = np.asarray(eigenvalues)
        return ev[self.distances(ev) > 0]

    def points(self, nodes=None):
        k = np.arange(nodes or self.nodes)
        w = np.exp(2j * np.pi * k / (nodes or self.nodes))
        return self.center + self.radius * w, w


@dataclass(frozen=True, eq=False)
class RieszResult:
    P: np.ndarray
    idempotency_residual: float
    invariance_residual_range: float
    invariance_residual_null: float
    inside_spectrum: np.ndarray
    outside_spectrum: np.ndarray
    quadrature_change: float
    range: Subspace = field(repr=False)
    null: Subspace = field(repr=False)


def _trapezoid(t, contour, nodes):
    lam, w = contour.points(nodes)
    res = resolvent(t, lam)
    # (1/2πi) ∮ (λ - T)^{-1} dλ with dλ = i r w dθ; fixed-order sum over nodes
    return contour.radius / nodes * np.sum(w[:, None, None] * res, axis=0)


def riesz_projection(t, contour, spec=None, check_convergence=True):
    """Spectral projection onto the part of σ(T) enclosed by ``contour``.

    The trapezoidal rule is evaluated at ``contour.nodes`` and again at
    twice as many nodes; the finer value is returned.

    :raises ContourTooClose: if the separation precondition fails
    :raises QuadratureNotConverged: if doubling the nodes moves P by more
        than 1e-9 · max(1, ||P||)
    """
    t = as_cmatrix(t, square=True)
    spec = spec or eig(t)
    contour.check(spec)
    p = _trapezoid(t, contour, contour.nodes)
    change = 0.0
    if check_convergence:
        p_fine = _trapezoid(t, contour, 2 * contour.nodes)
        change = opnorm(p_fine - p)
        if change > QUADRATURE_TOL * max(1.0, opnorm(p_fine)):
            raise QuadratureNotConverged(f"node doubling changed P by {change:.3e}")
        p = p_fine
    u, s, vh = np.linalg.svd(p)
    # singular values of an idempotent are 0 or >= 1
    r = int(np.count_nonzero(s > 0.5))
    rng_sp = Subspace(u[:, :r])
    null_sp = Subspace(vh[r:].conj().T)
    return RieszResult(
        P=p,
        idempotency_residual=opnorm(p @ p - p),
        invariance_residual_range=is_invariant(t, rng_sp).residual,
        invariance_residual_null=is_invariant(t, null_sp).residual,
        inside_spectrum=contour.inside(spec.eigenvalues),
        outside_spectrum=contour.outside(spec.eigenvalues),
        quadrature_change=change,
        range=rng_sp,
        null=null_sp,
    )


def restricted_spectrum(t, s):
    """σ(T|_S) for a T-invariant subspace S, via the compression B* T B."""
    if s.dim == 0:
        return np.zeros(0, dtype=complex)
    return eig(s.basis.conj().T @ t @ s.basis).eigenvalues


def cluster_contour(spec, target, min_gap, allow_empty=True, nodes=DEFAULT_NODES):
    """Circle about ``target`` separating nearby eigenvalues from the rest.

    Eigenvalues within ``min_gap`` of ``target`` are "near"; the radius is
    the midpoint between the farthest near eigenvalue and the closest
    remaining one.

    :raises NoSpectralGap: if the gap is under 10× the separation annulus,
        or nothing is near ``target`` and ``allow_empty`` is false
    """
    target = complex(target)
    d = np.sort(np.abs(np.asarray(spec.eigenvalues) - target))
    near = d[d <= min_gap]
    rest = d[d > min_gap]
    if near.size == 0 and not allow_empty:
        raise NoSpectralGap(f"no eigenvalue within {min_gap} of {target}")
    if rest.size == 0:
        inner = near[-1] if near.size else 0.0
        radius = max(2.0 * inner, inner + 1.0)
        return Contour(target, radius, nodes)
    inner = near[-1] if near.size else 0.0
    outer = rest[0]
    radius = 0.5 * (inner + outer)
    if outer - inner < 10 * 2 * SEPARATION * radius:
        raise NoSpectralGap(f"radial gap ({inner:.3e}, {outer:.3e}) too narrow")
    return Contour(target, radius, nodes)


@dataclass(frozen=True)
class PairSpectraReport:
    product_side: np.ndarray
    difference_side: np.ndarray
    distance: float
    tol: float

    @property
    def passed(self):
        return self.distance <= self.tol


def _matrix(e):
    return e.T if isinstance(e, Idempotent) else as_cmatrix(e, square=True)


def product_difference_identity(p, q, exclusion=1e-7, tol=1e-6):
    """Compare σ(pq)∖{0,1} with {1 - μ² : μ ∈ σ(p - q)∖{0, ±1}}.

    Points within ``exclusion`` of the excluded values are dropped.
    """
    a, b = _matrix(p), _matrix(q)
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    lam = eig(a @ b).eigenvalues
    mu = eig(a - b).eigenvalues
    lhs = lam[(np.abs(lam) > exclusion) & (np.abs(lam - 1) > exclusion)]
    keep = (np.abs(mu) > exclusion) & (np.abs(mu - 1) > exclusion) & (np.abs(mu + 1) > exclusion)
    rhs = 1 - mu[keep] ** 2
    return PairSpectraReport(lhs, rhs, hausdorff(lhs, rhs), tol)


def commutator_identity(p, q):
    """||(p - q)^4 - (p - q)^2 - (pq - qp)^2||."""
    a, b = _matrix(p), _matrix(q)
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    d = a - b
    d2 = d @ d
    c = a @ b - b @ a
    return opnorm(d2 @ d2 - d2 - c @ c)
