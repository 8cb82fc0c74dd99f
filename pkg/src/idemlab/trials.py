"""Seeded randomized property suites.

Each suite draws ``count`` independent trials; trial ``i`` uses the
generator ``default_rng([seed, i])`` so any failing trial can be replayed
alone.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .errors import IdemlabError, UnknownSuite
from .essential import EpsCase, nearest_exact_idempotent
from .idempotent import (
    ando_form,
    invariance_equiv,
    nullstar_invariant_check,
    random_idempotent,
    reducing_check,
    validate,
    witness_operator,
)
from .numkernel import eig, hausdorff, opnorm
from .pairs import extract_invariant_details
from .spectral import (
    cluster_contour,
    commutator_identity,
    is_quasinilpotent_desk,
    product_difference_identity,
    restricted_spectrum,
    riesz_projection,
)
from .subspace import Subspace, intersect, random_unitary

__all__ = ["TrialSummary", "SUITES", "run_suite", "trial_rng"]


@dataclass
class TrialSummary:
    suite: str
    count: int
    seed: int
    max_dim: int
    tolerances: dict
    passed: int = 0
    max_residuals: dict = field(default_factory=dict)
    failing: list = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def ok(self):
        return self.passed == self.count

    def record(self, index, checks):
        """``checks`` maps name -> (value, limit); the trial passes iff all value <= limit."""
        good = True
        for name, (value, limit) in checks.items():
            value = float(value)
            self.max_residuals[name] = max(self.max_residuals.get(name, 0.0), value)
            if not value <= limit:
                good = False
        if good:
            self.passed += 1
        else:
            self.failing.append(index)

    def as_dict(self):
        return {
            "suite": self.suite,
            "count": self.count,
            "passed": self.passed,
            "seed": self.seed,
            "max_dim": self.max_dim,
            "tolerances": self.tolerances,
            "max_residuals": self.max_residuals,
            "failing_trials": self.failing,
            "wall_time": self.wall_time,
        }


def trial_rng(seed, index):
    return np.random.default_rng([seed, index])


def _unit_noise(rng, n):
    e = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    return e / opnorm(e)


def _random_in(space, k, rng):
    """Random k-dimensional subspace of ``space``."""
    if k == 0 or space.dim == 0:
        return Subspace.zero(space.ambient)
    return Subspace(space.basis @ random_unitary(space.dim, rng)[:, :k])


def _suite_ando(summary, rng, index):
    n = int(rng.integers(1, summary.max_dim + 1))
    while True:
        e = random_idempotent(n, int(rng.integers(0, n + 1)), 10 ** rng.uniform(-2, 2.5), rng)
        form = ando_form(e)
        if form.kappa_V <= 1e6:
            break
    tol = summary.tolerances["reconstruction"]
    scale = max(1.0, e.norm)
    sim = opnorm(e.T - form.V @ (e.range.basis @ e.range.basis.conj().T) @ form.V_inv) / scale
    summary.record(index, {"similarity": (sim, tol), "block": (form.block_residual, tol)})


def _suite_lat_equiv(summary, rng, index):
    n = int(rng.integers(1, summary.max_dim + 1))
    e = random_idempotent(n, int(rng.integers(0, n + 1)), 10 ** rng.uniform(-2, 1.5), rng)
    kind = index % 3
    if kind == 1:
        s = Subspace(random_unitary(n, rng)[:, :int(rng.integers(0, n + 1))])
    else:
        part_r = _random_in(e.range, int(rng.integers(0, e.range.dim + 1)), rng)
        part_n = _random_in(e.null, int(rng.integers(0, e.null.dim + 1)), rng)
        both = np.hstack([part_r.basis, part_n.basis])
        s = Subspace.span(both) if both.shape[1] else Subspace.zero(n)
        if kind == 2 and 0 < s.dim < n:
            s = Subspace.span(s.basis + 1e-3 * (rng.standard_normal(s.basis.shape)))
    w = witness_operator(e)
    cmp = invariance_equiv(e, s, summary.tolerances["invariance"], w=w)
    summary.record(index, {
        "disagreement": (0.0 if cmp.agree else 1.0, 0.0),
        "witness_identity": (opnorm(w - (np.eye(n) - e.T)), summary.tolerances["witness"]),
    })


def _random_pair(rng, max_dim, skew_exp=(-2.0, 1.0)):
    n = int(rng.integers(1, max_dim + 1))
    p = random_idempotent(n, int(rng.integers(0, n + 1)), 10 ** rng.uniform(*skew_exp), rng)
    q = random_idempotent(n, int(rng.integers(0, n + 1)), 10 ** rng.uniform(*skew_exp), rng)
    return p, q


def _suite_spectra_identity(summary, rng, index):
    p, q = _random_pair(rng, summary.max_dim)
    rep = product_difference_identity(p, q, tol=summary.tolerances["hausdorff"])
    summary.record(index, {"hausdorff": (rep.distance, rep.tol)})


def _suite_commutator_identity(summary, rng, index):
    p, q = _random_pair(rng, summary.max_dim)
    res = commutator_identity(p, q)
    scale = (1 + p.norm + q.norm) ** 4
    summary.record(index, {"scaled_residual": (res / scale, summary.tolerances["scaled_residual"])})


def _suite_riesz(summary, rng, index):
    tol = summary.tolerances
    while True:
        n = int(rng.integers(1, summary.max_dim + 1))
        t = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2)
        spec = eig(t)
        ev = spec.eigenvalues
        sep = np.abs(ev[:, None] - ev[None, :]) + np.diag(np.full(n, np.inf))
        if n == 1 or sep.min() >= 0.1:
            break
    tnorm = opnorm(t)
    total = np.zeros((n, n), dtype=complex)
    worst = dict.fromkeys(("idempotency", "commutation", "inside", "outside"), 0.0)
    for lam in ev:
        res = riesz_projection(t, cluster_contour(spec, lam, 0.05), spec)
        total += res.P
        worst["idempotency"] = max(worst["idempotency"], res.idempotency_residual)
        worst["commutation"] = max(worst["commutation"], opnorm(res.P @ t - t @ res.P) / tnorm)
        worst["inside"] = max(worst["inside"],
                              hausdorff(restricted_spectrum(t, res.range), res.inside_spectrum))
        worst["outside"] = max(worst["outside"],
                               hausdorff(restricted_spectrum(t, res.null), res.outside_spectrum))
    summary.record(index, {
        "idempotency": (worst["idempotency"], tol["idempotency"]),
        "commutation": (worst["commutation"], tol["commutation"]),
        "partition_sum": (opnorm(total - np.eye(n)), tol["partition_sum"]),
        "inside_spectrum": (worst["inside"], tol["spectrum"]),
        "outside_spectrum": (worst["outside"], tol["spectrum"]),
    })


def _suite_pairs(summary, rng, index):
    n = int(rng.integers(2, max(2, summary.max_dim) + 1))
    a = np.triu(rng.standard_normal((n, n)), 1)
    tol = summary.tolerances
    try:
        rep = extract_invariant_details(a, tol["certify"])
    except IdemlabError:
        summary.record(index, {"extraction_error": (1.0, 0.0)})
        return
    pair = rep.pair
    union = np.concatenate([eig(a).eigenvalues, np.zeros(n)])
    spec_gap = hausdorff(eig(pair.T1.T @ pair.T2.T).eigenvalues, union)
    nontrivial = 0 < rep.subspace.dim < n
    summary.record(index, {
        "invariance_residual": (rep.residual, tol["certify"]),
        "trivial_subspace": (0.0 if nontrivial else 1.0, 0.0),
        "product_spectrum": (spec_gap, tol["spectrum"]),
        "commutator_not_quasinilpotent": (0.0 if is_quasinilpotent_desk(pair.D) else 1.0, 0.0),
    })


ESSENTIAL_EPS = (1e-6, 1e-4, 1e-2)
# ||V||^2 <= 10 for the generator's skew when skew <= 2.8
ESSENTIAL_MAX_SKEW = 2.8


def _suite_essential(summary, rng, index):
    n = int(rng.integers(2, max(2, summary.max_dim) + 1))
    kind = index % 3
    eps = ESSENTIAL_EPS[(index // 3) % 3]
    kappa_v = 1.0
    if kind == 0:
        s0, expected = np.zeros((n, n)), EpsCase.NEAR_ZERO
    elif kind == 1:
        s0, expected = np.eye(n), EpsCase.NEAR_IDENTITY
    else:
        k = int(rng.integers(1, n))
        e0 = random_idempotent(n, k, rng.uniform(0, ESSENTIAL_MAX_SKEW), rng)
        s0, expected = e0.T, EpsCase.NEAR_PROPER
        kappa_v = ando_form(e0).kappa_V
    t = s0 + eps * _unit_noise(rng, n)
    cls = nearest_exact_idempotent(t)
    s = cls.S.T
    summary.record(index, {
        "wrong_case": (0.0 if cls.case is expected else 1.0, 0.0),
        "idempotency": (opnorm(s @ s - s), summary.tolerances["idempotency"]),
        "distance_over_eps": (cls.distance / eps, summary.tolerances["distance_over_eps"]),
        "kappa_V": (kappa_v, summary.tolerances["kappa_V"]),
    })


def _structured_idempotent(rng, max_dim):
    """U·diag(core, I_a, 0_b)·U*, so R ∩ R* and N ∩ N* are typically non-trivial."""
    n = int(rng.integers(2, max(2, max_dim) + 1))
    a = int(rng.integers(0, n))
    b = int(rng.integers(0, n - a + 1))
    c = n - a - b
    block = np.zeros((n, n), dtype=complex)
    if c:
        block[:c, :c] = random_idempotent(c, int(rng.integers(0, c + 1)),
                                          10 ** rng.uniform(-1, 1), rng).T
    block[c:c + a, c:c + a] = np.eye(a)
    u = random_unitary(n, rng)
    return validate(u @ block @ u.conj().T)


def _suite_predicates(summary, rng, index):
    tol = summary.tolerances["predicate"]
    e = _structured_idempotent(rng, summary.max_dim)
    inner_null = intersect(e.null, e.null_star, tol)
    inner_range = intersect(e.range, e.range_star, tol)
    if rng.random() < 0.5 and inner_null.dim:
        s_null = _random_in(inner_null, int(rng.integers(1, inner_null.dim + 1)), rng)
    else:
        s_null = _random_in(e.null_star, int(rng.integers(0, e.null_star.dim + 1)), rng)
    if rng.random() < 0.5 and inner_range.dim:
        s_range = _random_in(inner_range, int(rng.integers(1, inner_range.dim + 1)), rng)
    else:
        s_range = _random_in(e.range, int(rng.integers(0, e.range.dim + 1)), rng)
    v1, c1 = nullstar_invariant_check(e, s_null, tol, tol)
    v2, c2 = reducing_check(e, s_range, tol, tol)
    summary.record(index, {
        "nullstar_mismatch": (0.0 if v1 == c1 else 1.0, 0.0),
        "reducing_mismatch": (0.0 if v2 == c2 else 1.0, 0.0),
    })


SUITES = {
    "ando": (_suite_ando, 32, {"reconstruction": 1e-8}),
    "lat-equiv": (_suite_lat_equiv, 16, {"invariance": 1e-8, "witness": 1e-8}),
    "spectra-identity": (_suite_spectra_identity, 16, {"hausdorff": 1e-6}),
    "commutator-identity": (_suite_commutator_identity, 32, {"scaled_residual": 1e-8}),
    "riesz": (_suite_riesz, 16, {"idempotency": 1e-9, "commutation": 1e-8,
                                 "partition_sum": 1e-8, "spectrum": 1e-7}),
    "pairs": (_suite_pairs, 12, {"certify": 1e-7, "spectrum": 1e-7}),
    "essential": (_suite_essential, 16, {"idempotency": 1e-10, "distance_over_eps": 10.0,
                                       "kappa_V": 10.0}),
    "predicates": (_suite_predicates, 16, {"predicate": 1e-7}),
}


def run_suite(name, count, seed=0, max_dim=None, tolerances=None):
    """Run ``count`` trials of suite ``name``; see :data:`SUITES` for defaults."""
    try:
        fn, default_dim, default_tol = SUITES[name]
    except KeyError:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {sorted(SUITES)}") from None
    tols = dict(default_tol)
    tols.update(tolerances or {})
    summary = TrialSummary(name, count, seed, max_dim or default_dim, tols)
    start = time.perf_counter()
    for i in range(count):
        fn(summary, trial_rng(seed, i), i)
    summary.wall_time = time.perf_counter() - start
    return summary
