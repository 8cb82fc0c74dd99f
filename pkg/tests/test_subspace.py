import numpy as np
import pytest
from hypothesis import given, strategies as st

from idemlab.errors import DimensionMismatch, NotComplementary
from idemlab.subspace import (
    Subspace, complement, gap, image, intersect, is_invariant, leq, oblique_decompose,
    projector, random_subspace, subspace_sum,
)

from conftest import cgauss
from oracles import orth_projector

seeds = st.integers(0, 2**32 - 1)
r2 = 1 / np.sqrt(2)
e = np.eye(3)


def line(*v):
    return Subspace.span(np.array(v, dtype=complex)[:, None])


def test_projector_examples():
    assert np.allclose(projector(Subspace.coordinate(2, [0])), np.diag([1, 0]))
    assert np.allclose(projector(Subspace.zero(2)), 0)
    assert np.allclose(projector(line(1, 1)), [[0.5, 0.5], [0.5, 0.5]])


def test_leq_examples():
    assert leq(Subspace.coordinate(2, [0]), Subspace.full(2))
    assert not leq(Subspace.coordinate(2, [0]), Subspace.coordinate(2, [1]))
    assert not leq(line(1, 1), Subspace.coordinate(2, [0]))


def test_gap_examples():
    s = Subspace.coordinate(2, [0])
    assert gap(s, s) == 0
    assert gap(s, Subspace.coordinate(2, [1])) == pytest.approx(1)
    th = np.pi / 6
    assert gap(s, line(np.cos(th), np.sin(th))) == pytest.approx(0.5)


def test_lattice_operation_examples():
    a = Subspace.coordinate(3, [0, 1])
    b = Subspace.coordinate(3, [1, 2])
    assert gap(intersect(a, b), Subspace.coordinate(3, [1])) < 1e-12
    assert gap(subspace_sum(Subspace.coordinate(3, [0]), Subspace.coordinate(3, [1])), a) < 1e-12
    assert gap(complement(line(1, 1)), line(1, -1)) < 1e-12
    assert complement(Subspace.zero(2)).dim == 2 and complement(Subspace.full(2)).dim == 0


def test_invariance_examples():
    t0 = np.array([[1.0, 1.0], [0.0, 0.0]])
    assert is_invariant(np.eye(2), line(0.3, 0.7j))
    assert is_invariant(t0, Subspace.coordinate(2, [0]))
    v = is_invariant(t0, Subspace.coordinate(2, [1]))
    assert not v and v.residual == pytest.approx(1)


def test_oblique_examples():
    e1, e2 = Subspace.coordinate(2, [0]), Subspace.coordinate(2, [1])
    xr, xn = oblique_decompose([3, 4], e1, e2)
    assert np.allclose(xr, [3, 0]) and np.allclose(xn, [0, 4])
    xr, xn = oblique_decompose([0, 1], e1, line(1, 1))
    assert np.allclose(xr, [-1, 0]) and np.allclose(xn, [1, 1])
    xr, xn = oblique_decompose([2, 0], e1, line(1, 1))
    assert np.allclose(xr, [2, 0]) and np.allclose(xn, 0)


def test_errors():
    with pytest.raises(ValueError):
        Subspace(np.array([[1.0], [1.0]]))
    with pytest.raises(DimensionMismatch):
        gap(Subspace.zero(2), Subspace.zero(3))
    with pytest.raises(NotComplementary):
        oblique_decompose([1, 0], Subspace.coordinate(2, [0]), Subspace.coordinate(2, [0]))


@st.composite
def subspaces(draw, n=None):
    n = n or draw(st.integers(1, 10))
    k = draw(st.integers(0, n))
    return random_subspace(n, k, draw(seeds))


@given(subspaces())
def test_projector_is_orthogonal_projection(s):
    p = projector(s)
    assert np.abs(p @ p - p).max() <= 1e-12 and np.abs(p - p.conj().T).max() <= 1e-12
    if s.dim:
        assert np.allclose(p, orth_projector(s.basis), atol=1e-12)


@given(st.integers(1, 8), seeds)
def test_gap_is_a_metric(n, seed):
    rng = np.random.default_rng(seed)
    a, b, c = (random_subspace(n, int(rng.integers(0, n + 1)), rng) for _ in range(3))
    assert gap(a, b) == gap(b, a)
    assert gap(a, c) <= gap(a, b) + gap(b, c) + 1e-10


@given(subspaces(), seeds)
def test_oblique_on_orthogonal_complement(s, seed):
    x = cgauss(np.random.default_rng(seed), s.ambient)
    xr, xn = oblique_decompose(x, s, complement(s))
    assert np.allclose(xr, projector(s) @ x, atol=1e-10)
    assert np.allclose(xr + xn, x, atol=1e-10)


@given(st.integers(2, 10), seeds)
def test_dimension_formula(n, seed):
    rng = np.random.default_rng(seed)
    # force overlap by building both from a shared piece
    shared = cgauss(rng, n, int(rng.integers(0, n // 2 + 1)))
    k1, k2 = int(rng.integers(0, n // 2 + 1)), int(rng.integers(0, n // 2 + 1))
    s1 = Subspace.span(np.hstack([shared, cgauss(rng, n, k1)])) if shared.shape[1] + k1 else Subspace.zero(n)
    s2 = Subspace.span(np.hstack([shared, cgauss(rng, n, k2)])) if shared.shape[1] + k2 else Subspace.zero(n)
    assert intersect(s1, s2).dim + subspace_sum(s1, s2).dim == s1.dim + s2.dim


@given(subspaces(), seeds)
def test_image_of_identity_and_complement(s, seed):
    assert gap(image(np.eye(s.ambient), s), s) < 1e-10
    assert image(np.eye(s.ambient) - projector(s), s).dim == 0
