import numpy as np
import pytest
from hypothesis import given, strategies as st

from idemlab.errors import DimensionMismatch, Singular
from idemlab.numkernel import balance, eig, hausdorff, hessenberg, opnorm, resolvent, solve, svd_rank
from idemlab.subspace import random_unitary

from conftest import cgauss
from oracles import charpoly_roots, set_distance

seeds = st.integers(0, 2**32 - 1)


def test_eig_diagonal():
    assert set_distance(eig(np.diag([0.0, 2.0])).eigenvalues, [0, 2]) == 0


def test_eig_jordan_block_is_exact():
    ev = eig(np.array([[0.0, 1.0], [0.0, 0.0]])).eigenvalues
    assert np.all(ev == 0) and ev.size == 2


@pytest.mark.parametrize("seed", range(5))
def test_eig_matches_characteristic_polynomial(seed):
    a = cgauss(np.random.default_rng(seed), 5, 5)
    assert set_distance(eig(a).eigenvalues, charpoly_roots(a)) <= 1e-8


def test_eig_empty_and_scalar():
    with pytest.raises(DimensionMismatch):
        eig(np.zeros((0, 0)))
    assert eig(np.array([[3 - 1j]])).eigenvalues[0] == 3 - 1j


def test_strictly_triangular_is_exactly_nilpotent(rng):
    a = np.triu(rng.standard_normal((9, 9)), 1)
    assert eig(a).spectral_radius == 0


@given(seeds, st.integers(1, 12))
def test_eig_unitary_similarity_invariant(seed, n):
    rng = np.random.default_rng(seed)
    a = cgauss(rng, n, n)
    u = random_unitary(n, rng)
    d = hausdorff(eig(a).eigenvalues, eig(u.conj().T @ a @ u).eigenvalues)
    assert d <= 1e-8 * max(1, opnorm(a))


@given(seeds, st.integers(1, 16))
def test_eig_agrees_with_lapack(seed, n):
    a = cgauss(np.random.default_rng(seed), n, n)
    assert set_distance(eig(a).eigenvalues, np.linalg.eigvals(a)) <= 1e-9 * max(1, opnorm(a))


def test_balance_preserves_spectrum(rng):
    a = cgauss(rng, 6, 6) * np.logspace(-4, 4, 6)[:, None]
    b, lo, hi = balance(a)
    assert 0 <= lo <= hi <= 6
    assert set_distance(np.linalg.eigvals(a), np.linalg.eigvals(b)) <= 1e-8 * opnorm(a)


def test_hessenberg_form(rng):
    a = cgauss(rng, 7, 7)
    h = hessenberg(a)
    h = h[0] if isinstance(h, tuple) else h
    assert np.allclose(np.tril(h, -2), 0)
    assert set_distance(np.linalg.eigvals(h), np.linalg.eigvals(a)) <= 1e-10 * opnorm(a)


def test_svd_rank_examples():
    r = svd_rank(np.diag([1.0, 0.0]))
    assert r.rank == 1 and np.allclose(r.singular_values, [1, 0])
    assert np.allclose(abs(r.range_basis[:, 0]), [1, 0]) and np.allclose(abs(r.null_basis[:, 0]), [0, 1])
    r = svd_rank(np.array([[1.0, 1.0], [0.0, 0.0]]))
    assert r.rank == 1 and np.allclose(r.singular_values, [np.sqrt(2), 0])
    r = svd_rank(np.zeros((3, 3)))
    assert r.rank == 0 and r.null_basis.shape == (3, 3)


@given(seeds, st.integers(1, 10), st.integers(1, 10), st.integers(0, 10))
def test_svd_rank_bases(seed, m, n, k):
    rng = np.random.default_rng(seed)
    k = min(k, m, n)
    a = cgauss(rng, m, k) @ cgauss(rng, k, n)
    r = svd_rank(a)
    assert r.rank == k
    assert np.allclose(r.range_basis.conj().T @ r.range_basis, np.eye(r.rank), atol=1e-12)
    assert np.allclose(r.null_basis.conj().T @ r.null_basis, np.eye(n - r.rank), atol=1e-12)
    s1 = r.singular_values[0] if r.singular_values.size else 0
    assert opnorm(a @ r.null_basis) <= 1e-10 * s1 * 10 + 1e-300


def test_solve_examples(rng):
    b = cgauss(rng, 3, 2)
    assert np.allclose(solve(np.eye(3), b), b)
    assert np.allclose(solve(np.diag([2.0, 4.0]), np.eye(2)), np.diag([0.5, 0.25]))
    r = resolvent(np.array([[0.0, 1.0], [0.0, 0.0]]), 1.0)
    assert np.allclose(np.squeeze(r), [[1, 1], [0, 1]])


def test_solve_singular_and_shape():
    with pytest.raises(Singular):
        solve(np.array([[1.0, 1.0], [1.0, 1.0]]), np.eye(2))
    with pytest.raises(DimensionMismatch):
        solve(np.eye(2), np.eye(3))


@given(seeds, st.integers(1, 16), st.floats(0, 6))
def test_solve_round_trip(seed, n, logk):
    rng = np.random.default_rng(seed)
    u, v = random_unitary(n, rng), random_unitary(n, rng)
    a = u @ np.diag(np.logspace(0, -logk, n)) @ v
    b = cgauss(rng, n, 3)
    assert opnorm(a @ solve(a, b) - b) / opnorm(b) <= 1e-8


def test_hausdorff_conventions():
    assert hausdorff([], []) == 0
    assert hausdorff([1], []) == np.inf
    assert hausdorff([0, 1], [1.5]) == pytest.approx(1.5)
