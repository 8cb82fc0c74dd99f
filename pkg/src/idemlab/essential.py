"""Near-idempotents and nearly commuting idempotent pairs.

"Compact" is modeled by "small in norm": a matrix T with ||T^2 - T|| small
has its eigenvalues clustered at 0 and 1, and the Riesz projection onto the
cluster at 1 is an exact idempotent close to T.  Every consequence is
reported as a measured residual; no perturbation constant is asserted.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DimensionMismatch, NotEpsCommuting, NotNearIdempotent
from .idempotent import Idempotent, validate
from .numkernel import as_cmatrix, eig, opnorm
from .spectral import cluster_contour, riesz_projection

__all__ = [
    "EpsCase",
    "PairCase",
    "EpsIdempotentClass",
    "EssentialPairCase",
    "ConverseReport",
    "AnnihilatedPair",
    "nearest_exact_idempotent",
    "pair_case_analysis",
    "converse_checks",
    "example54",
    "CLUSTER_RADIUS",
]

CLUSTER_RADIUS = 0.25


class EpsCase(enum.Enum):
    NEAR_IDENTITY = "NearIdentity"
    NEAR_ZERO = "NearZero"
    NEAR_PROPER = "NearProper"


class PairCase(enum.Enum):
    SUM_NEAR_IDENTITY = "SumNearIdentity"
    DIFFERENCE_SMALL = "DifferenceSmall"
    PRODUCT_ANNIHILATES_S = "ProductAnnihilatesS"


@dataclass(frozen=True, eq=False)
class EpsIdempotentClass:
    case: EpsCase
    S: Idempotent
    distance: float
    eps: float
    clusters: dict


def nearest_exact_idempotent(t, eps_max=0.1, nodes=256):
    """Classify an ε-idempotent and return the Riesz idempotent at its 1-cluster.

    :raises NotNearIdempotent: ||T^2 - T|| > eps_max, or an eigenvalue lies
        farther than 0.25 from {0, 1}
    """
    t = as_cmatrix(t, square=True)
    n = t.shape[0]
    eps = opnorm(t @ t - t)
    if eps > eps_max:
        raise NotNearIdempotent(f"||T^2 - T|| = {eps:.3e} exceeds {eps_max}")
    spec = eig(t)
    ev = spec.eigenvalues
    at0 = np.abs(ev) < CLUSTER_RADIUS
    at1 = np.abs(ev - 1) < CLUSTER_RADIUS
    if not np.all(at0 | at1):
        raise NotNearIdempotent("eigenvalues outside the 0.25-neighbourhoods of 0 and 1")
    clusters = {"0": int(at0.sum()), "1": int(at1.sum())}
    if clusters["1"] == 0:
        case, s = EpsCase.NEAR_ZERO, np.zeros((n, n), dtype=complex)
    elif clusters["0"] == 0:
        case, s = EpsCase.NEAR_IDENTITY, np.eye(n, dtype=complex)
    else:
        contour = cluster_contour(spec, 1.0, CLUSTER_RADIUS, allow_empty=False, nodes=nodes)
        case, s = EpsCase.NEAR_PROPER, riesz_projection(t, contour, spec).P
    exact = validate(s, tol=1e-10 * max(1.0, opnorm(s) ** 2))
    return EpsIdempotentClass(case, exact, opnorm(t - s), eps, clusters)


@dataclass(frozen=True, eq=False)
class EssentialPairCase:
    """Case of an ε-commuting idempotent pair, decided through R = (T1 - T2)^2.

    ``residuals`` holds the case-defining distances ``"R-I"``, ``"R"``,
    ``"R-S"`` (inf when no proper S exists) and the products named by the
    chosen case.
    """

    case: PairCase
    R: np.ndarray
    S: Idempotent | None
    residuals: dict
    classification: EpsIdempotentClass = field(repr=False)

    @property
    def defining_residual(self):
        key = {PairCase.SUM_NEAR_IDENTITY: "R-I", PairCase.DIFFERENCE_SMALL: "R",
               PairCase.PRODUCT_ANNIHILATES_S: "R-S"}[self.case]
        return self.residuals[key]


def _mat(e):
    return e.T if isinstance(e, Idempotent) else validate(e).T


def pair_case_analysis(t1, t2, delta=0.05):
    """Sort a nearly commuting pair into the three cases through R = (T1 - T2)^2.

    :raises NotEpsCommuting: ||T1 T2 - T2 T1|| > delta
    """
    a, b = _mat(t1), _mat(t2)
    if a.shape != b.shape:
        raise DimensionMismatch(f"{a.shape} vs {b.shape}")
    n = a.shape[0]
    eye = np.eye(n)
    d = a @ b - b @ a
    dnorm = opnorm(d)
    if dnorm > delta:
        raise NotEpsCommuting(f"||D|| = {dnorm:.3e} exceeds {delta}")
    diff = a - b
    r = diff @ diff
    # R^2 - R = D^2, so ||R^2 - R|| <= ||D||^2 up to roundoff
    r_eps = opnorm(r @ r - r)
    cls = nearest_exact_idempotent(r, eps_max=max(0.1, 2 * dnorm ** 2))
    res = {
        "D": dnorm,
        "R^2-R": r_eps,
        "R-I": opnorm(r - eye),
        "R": opnorm(r),
        "R-S": opnorm(r - cls.S.T) if cls.case is EpsCase.NEAR_PROPER else float("inf"),
    }
    if cls.case is EpsCase.NEAR_IDENTITY:
        case, s = PairCase.SUM_NEAR_IDENTITY, None
        res.update({"T1T2": opnorm(a @ b), "T2T1": opnorm(b @ a),
                    "T1+T2-I": opnorm(a + b - eye),
                    "T1+T2-2T1T2-I": opnorm(a + b - 2 * a @ b - eye)})
    elif cls.case is EpsCase.NEAR_ZERO:
        case, s = PairCase.DIFFERENCE_SMALL, None
        res.update({"T1(I-T2)": opnorm(a @ (eye - b)), "T2(I-T1)": opnorm(b @ (eye - a)),
                    "T1-T2": opnorm(diff)})
    else:
        case, s = PairCase.PRODUCT_ANNIHILATES_S, cls.S
        sm = s.T
        res.update({"T1T2S": opnorm(a @ b @ sm), "T2T1S": opnorm(b @ a @ sm),
                    "(T1+T2-I)S": opnorm((a + b - eye) @ sm)})
    return EssentialPairCase(case, r, s, res, cls)


@dataclass(frozen=True)
class ConverseReport:
    sum_norm: float
    difference_norm: float
    commutator_norm: float
    sum_bound: float
    difference_bound: float
    decomposition_residual: float

    @property
    def bounds_hold(self):
        slack = 1e-12 * max(1.0, self.sum_bound, self.difference_bound)
        return (self.commutator_norm <= self.sum_bound + slack
                and self.commutator_norm <= self.difference_bound + slack)


def converse_checks(t1, t2):
    """Norms behind "T1 + T2 - I small or T1 - T2 small forces D small".

    Uses D = T1 (T1 + T2 - I) - (T1 + T2 - I) T1 for the first bound and
    the three-term split D = -(T1 - T1T2) - (T2T1 - T2) + (T1 - T2) for the
    second.
    """
    a, b = _mat(t1), _mat(t2)
    eye = np.eye(a.shape[0])
    d = a @ b - b @ a
    diff = a - b
    split = -(a - a @ b) - (b @ a - b) + diff
    na, nb = opnorm(a), opnorm(b)
    sum_norm = opnorm(a + b - eye)
    diff_norm = opnorm(diff)
    return ConverseReport(
        sum_norm=sum_norm,
        difference_norm=diff_norm,
        commutator_norm=opnorm(d),
        sum_bound=2 * na * sum_norm,
        difference_bound=(1 + na + nb) * diff_norm,
        decomposition_residual=opnorm(d - split),
    )


class AnnihilatedPair(NamedTuple):
    T1: Idempotent
    T2: Idempotent
    S: Idempotent
    report: dict


def example54(a1, a2):
    """Pair annihilated on R(S) by T1 T2, T2 T1 and T1 + T2 - I, yet with ||D|| = ||[A1; A2]||.

    T1 = [[I, 0, A1], [0, I, A2], [0, 0, 0]], T2 = diag(0, 0, I),
    S = diag(I, 0, 0), all blocks m × m.
    """
    a1 = as_cmatrix(a1, square=True, name="A1")
    a2 = as_cmatrix(a2, square=True, name="A2")
    if a1.shape != a2.shape:
        raise DimensionMismatch(f"A1 {a1.shape} vs A2 {a2.shape}")
    m = a1.shape[0]
    eye, zero = np.eye(m), np.zeros((m, m))
    t1 = np.block([[eye, zero, a1], [zero, eye, a2], [zero, zero, zero]])
    t2 = np.block([[zero, zero, zero], [zero, zero, zero], [zero, zero, eye]])
    s = np.block([[eye, zero, zero], [zero, zero, zero], [zero, zero, zero]])
    big = np.eye(3 * m)
    d = t1 @ t2 - t2 @ t1
    report = {
        "T1T2S": opnorm(t1 @ t2 @ s),
        "T2T1S": opnorm(t2 @ t1 @ s),
        "(T1+T2-I)S": opnorm((t1 + t2 - big) @ s),
        "D": opnorm(d),
        "stacked": opnorm(np.vstack([a1, a2])),
    }
    return AnnihilatedPair(validate(t1), validate(t2), validate(s), report)
