import numpy as np
import pytest
from hypothesis import given, strategies as st

from idemlab.errors import NotEpsCommuting, NotNearIdempotent
from idemlab.essential import (
    EpsCase, PairCase, converse_checks, example54, nearest_exact_idempotent, pair_case_analysis,
)
from idemlab.idempotent import random_idempotent, validate
from idemlab.numkernel import opnorm
from idemlab.subspace import random_unitary

from conftest import cgauss

seeds = st.integers(0, 2**32 - 1)


def unit_noise(rng, n):
    e = cgauss(rng, n, n)
    return e / opnorm(e)


def test_near_identity(rng):
    cls = nearest_exact_idempotent(np.eye(5) + 1e-6 * unit_noise(rng, 5))
    assert cls.case is EpsCase.NEAR_IDENTITY and np.array_equal(cls.S.T, np.eye(5))
    assert cls.distance == pytest.approx(1e-6, rel=1e-6)


def test_near_zero(rng):
    cls = nearest_exact_idempotent(1e-6 * unit_noise(rng, 4))
    assert cls.case is EpsCase.NEAR_ZERO and not cls.S.T.any()


def test_near_proper(rng):
    cls = nearest_exact_idempotent(np.diag([1.0, 1, 0, 0]) + 1e-4 * unit_noise(rng, 4))
    s = cls.S.T
    assert cls.case is EpsCase.NEAR_PROPER and cls.S.rank == 2
    assert opnorm(s @ s - s) <= 1e-10
    assert cls.clusters == {"0": 2, "1": 2}


def test_not_near_idempotent():
    with pytest.raises(NotNearIdempotent):
        nearest_exact_idempotent(np.diag([0.5, 1.0]))


def test_pair_cases():
    a, b = np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
    res = pair_case_analysis(a, b)
    assert res.case is PairCase.SUM_NEAR_IDENTITY and res.residuals["T1+T2-I"] == 0
    res = pair_case_analysis(a, a)
    assert res.case is PairCase.DIFFERENCE_SMALL
    assert all(res.residuals[k] == 0 for k in ("D", "R", "T1(I-T2)", "T2(I-T1)", "T1-T2"))
    p, p1, p2 = np.diag([1.0, 0.0]), np.diag([1.0, 0.0]), np.diag([0.0, 1.0])
    z = np.zeros((2, 2))
    res = pair_case_analysis(np.block([[p, z], [z, p1]]), np.block([[p, z], [z, p2]]))
    assert res.case is PairCase.PRODUCT_ANNIHILATES_S and res.S.rank == 2
    assert max(res.residuals[k] for k in ("T1T2S", "T2T1S", "(T1+T2-I)S")) <= 1e-12


def test_pair_not_commuting():
    with pytest.raises(NotEpsCommuting):
        pair_case_analysis(np.diag([1.0, 0.0]), np.array([[0.5, 0.5], [0.5, 0.5]]))


def test_converse_examples():
    e = random_idempotent(5, 2, 1.0, 4)
    rep = converse_checks(e, e)
    assert rep.difference_norm == 0 and rep.commutator_norm == 0
    assert rep.sum_norm == pytest.approx(opnorm(2 * e.T - np.eye(5)))
    rep = converse_checks(*example54(np.eye(2), np.eye(2))[:2])
    assert rep.commutator_norm == pytest.approx(np.sqrt(2)) and rep.bounds_hold


@given(st.integers(1, 12), seeds)
def test_converse_small_difference(n, seed):
    rng = np.random.default_rng(seed)
    t1 = random_idempotent(n, int(rng.integers(0, n + 1)), rng.uniform(0, 2), rng)
    g = np.eye(n) + 1e-7 * unit_noise(rng, n)
    t2 = validate(g @ t1.T @ np.linalg.inv(g))
    rep = converse_checks(t1, t2)
    assert rep.bounds_hold and rep.decomposition_residual <= 1e-12 * (1 + t1.norm) ** 2
    assert rep.commutator_norm <= 5e-6 * (1 + t1.norm + t2.norm)


def test_annihilated_pair_values():
    ex = example54(np.eye(2), np.eye(2))
    r = ex.report
    assert max(r["T1T2S"], r["T2T1S"], r["(T1+T2-I)S"]) <= 1e-14
    assert abs(r["D"] - np.sqrt(2)) <= 1e-12
    assert example54(np.zeros((2, 2)), np.zeros((2, 2))).report["D"] == 0
    assert example54(np.eye(3), np.zeros((3, 3))).report["D"] == pytest.approx(1)


@given(st.integers(1, 6), seeds)
def test_annihilated_pair_exact_for_any_blocks(m, seed):
    rng = np.random.default_rng(seed)
    a1, a2 = cgauss(rng, m, m), cgauss(rng, m, m)
    r = example54(a1, a2).report
    assert max(r["T1T2S"], r["T2T1S"], r["(T1+T2-I)S"]) <= 1e-14
    assert r["D"] == pytest.approx(r["stacked"], rel=1e-12)


@given(st.integers(2, 10), seeds, st.sampled_from([1e-6, 1e-4, 1e-2]))
def test_classification_unitarily_invariant(n, seed, eps):
    rng = np.random.default_rng(seed)
    s0 = random_idempotent(n, int(rng.integers(0, n + 1)), rng.uniform(0, 2), rng).T
    t = s0 + eps * unit_noise(rng, n)
    u = random_unitary(n, rng)
    a, b = nearest_exact_idempotent(t), nearest_exact_idempotent(u @ t @ u.conj().T)
    assert a.case is b.case and a.clusters == b.clusters
    assert opnorm(a.S.T @ a.S.T - a.S.T) <= 1e-10 * max(1, a.S.norm ** 2)


@given(st.integers(1, 10), seeds)
def test_exact_idempotent_is_its_own_nearest(n, seed):
    rng = np.random.default_rng(seed)
    r = int(rng.integers(0, n + 1))
    e = random_idempotent(n, r, rng.uniform(0, 2), rng)
    cls = nearest_exact_idempotent(e.T)
    assert cls.distance <= 1e-9 * max(1, e.norm)
    expected = EpsCase.NEAR_ZERO if r == 0 else EpsCase.NEAR_IDENTITY if r == n else EpsCase.NEAR_PROPER
    assert cls.case is expected


@given(st.integers(1, 8), seeds)
def test_commuting_pairs_classify(n, seed):
    rng = np.random.default_rng(seed)
    q = np.eye(n) + 0.3 * cgauss(rng, n, n) / np.sqrt(n)
    qi = np.linalg.inv(q)
    a = q @ np.diag(rng.integers(0, 2, n).astype(float)) @ qi
    b = q @ np.diag(rng.integers(0, 2, n).astype(float)) @ qi
    res = pair_case_analysis(a, b)
    candidates = [res.residuals[k] for k in ("R-I", "R", "R-S")]
    assert res.defining_residual == min(candidates) and res.defining_residual <= 1e-8
