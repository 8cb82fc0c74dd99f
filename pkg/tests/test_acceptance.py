"""The ten acceptance criteria at their stated tolerances and time budgets.

Each test prints one PASS/FAIL line (visible without ``-s``).
"""

import time

import numpy as np
import pytest

from idemlab.essential import example54
from idemlab.idempotent import composition_operator, validate, witness_operator
from idemlab.subspace import Subspace, is_invariant
from idemlab.trials import run_suite


def announce(capsys, number, title, ok, detail):
    with capsys.disabled():
        print(f"\n[acceptance {number:>2}] {'PASS' if ok else 'FAIL'}  {title}: {detail}")


SUITE_CRITERIA = [
    # number, title, suite, count, seed, max_dim, time budget (s)
    (1, "block-form reconstruction", "ando", 1000, 7, 32, 30),
    (2, "lattice equivalence with the witness", "lat-equiv", 200, 42, 16, 10),
    (3, "product/difference spectral identity", "spectra-identity", 500, 1, 16, 30),
    (4, "commutator identity", "commutator-identity", 500, 3, 32, 20),
    (5, "Riesz projections", "riesz", 100, 5, 16, 60),
    (6, "nilpotent -> idempotent pair -> invariant subspace", "pairs", 100, 11, 12, 60),
    (7, "near-idempotent trichotomy", "essential", 300, 13, 16, 30),
    (10, "null-star and reducing predicates", "predicates", 200, 17, 16, 10),
]


@pytest.mark.parametrize("number,title,suite,count,seed,max_dim,budget", SUITE_CRITERIA,
                         ids=[c[2] for c in SUITE_CRITERIA])
def test_suite_criterion(capsys, number, title, suite, count, seed, max_dim, budget):
    summary = run_suite(suite, count, seed, max_dim)
    ok = summary.ok and summary.wall_time <= budget
    worst = ", ".join(f"{k}={v:.2e}" for k, v in summary.max_residuals.items())
    announce(capsys, number, title, ok,
             f"{summary.passed}/{count} trials, {summary.wall_time:.1f}s (budget {budget}s); max {worst}")
    assert summary.failing == [], f"failing trials {summary.failing[:20]}"
    assert summary.wall_time <= budget


def test_annihilated_pair_exactness(capsys):
    start = time.perf_counter()
    worst_products, worst_d = 0.0, 0.0
    for m in range(1, 9):
        r = example54(np.eye(m), np.eye(m)).report
        worst_products = max(worst_products, r["T1T2S"], r["T2T1S"], r["(T1+T2-I)S"])
        worst_d = max(worst_d, abs(r["D"] - np.sqrt(2)))
    elapsed = time.perf_counter() - start
    ok = worst_products <= 1e-14 and worst_d <= 1e-12 and elapsed <= 1
    announce(capsys, 8, "annihilated pair with large commutator", ok,
             f"max product {worst_products:.1e}, max |D - sqrt2| {worst_d:.1e}, {elapsed:.3f}s")
    assert worst_products <= 1e-14 and worst_d <= 1e-12 and elapsed <= 1


def test_hardy_composition_operator(capsys):
    start = time.perf_counter()
    alpha, degree = 0.5, 8
    c = composition_operator(alpha, degree)
    e = validate(c)
    w = witness_operator(e)
    inv_1z = is_invariant(c, Subspace.coordinate(degree + 1, [0, 1])).invariant
    inv_z = is_invariant(c, Subspace.coordinate(degree + 1, [1])).invariant
    rng = np.random.default_rng(2024)
    worst = 0.0
    for _ in range(50):
        f = rng.standard_normal(degree + 1) + 1j * rng.standard_normal(degree + 1)
        # independent oracle: Horner evaluation of f at alpha
        value = 0j
        for coef in f[::-1]:
            value = value * alpha + coef
        expected = f.copy()
        expected[0] -= value
        worst = max(worst, np.max(np.abs(w @ f - expected)))
    elapsed = time.perf_counter() - start
    ok = inv_1z and not inv_z and worst <= 1e-10 and elapsed <= 1
    announce(capsys, 9, "composition operator with constant symbol", ok,
             f"span{{1,z}} invariant={inv_1z}, span{{z}} invariant={inv_z}, "
             f"witness error {worst:.1e}, {elapsed:.3f}s")
    assert inv_1z and not inv_z
    assert worst <= 1e-10 and elapsed <= 1
