from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.linalg import null_space

from modwedge.errors import DimensionMismatch, ZeroInput
from modwedge.hilbert import (
    AntilinearOp,
    full_space,
    is_cyclic,
    is_separating,
    is_standard,
    is_subspace,
    multiply_by_i,
    real_form,
    real_intersect,
    real_orthonormalize,
    real_sum,
    realify,
    span,
    subspace_distance,
    zero_subspace,
)
from modwedge.modular import symplectic_complement


def exact_rank(rows):
    """Row reduction over Q; the oracle for real ranks of integer data."""
    m = [[Fraction(int(x)) for x in row] for row in rows]
    rank, cols = 0, len(m[0]) if m else 0
    for c in range(cols):
        piv = next((r for r in range(rank, len(m)) if m[r][c] != 0), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        for r in range(len(m)):
            if r != rank and m[r][c] != 0:
                f = m[r][c] / m[rank][c]
                m[r] = [a - f * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def random_subspace(rng, n, k):
    z = rng.standard_normal((n, k)) + 1j * rng.standard_normal((n, k))
    return real_orthonormalize(z)


def test_single_vector():
    v = real_orthonormalize([np.array([1, 0])])
    assert v.dim == 1
    assert np.allclose(v.frame[:, 0], [1, 0])


def test_complex_line_is_real_plane():
    v = real_orthonormalize([np.array([1, 0]), np.array([1j, 0])])
    assert v.dim == 2
    assert v.gram_defect() < 1e-12


def test_duplicate_reduces_rank(rng):
    ints = rng.integers(-5, 6, size=(3, 4)) + 1j * rng.integers(-5, 6, size=(3, 4))
    vecs = [ints[:, i] for i in range(4)] + [ints[:, 1]]
    expected = exact_rank(realify(np.column_stack(vecs)).T)
    assert expected == 4
    assert real_orthonormalize(vecs).dim == expected


def test_zero_input_rejected():
    with pytest.raises(ZeroInput):
        real_orthonormalize([np.zeros(3)])
    with pytest.raises(DimensionMismatch):
        real_orthonormalize([np.zeros(3), np.ones(2)])


def test_intersection_basics():
    v = real_form(2)
    assert subspace_distance(real_intersect(v, v), v) < 1e-12
    assert real_intersect(v, multiply_by_i(v)).dim == 0
    with pytest.raises(DimensionMismatch):
        real_intersect(real_form(2), real_form(3))


@pytest.mark.parametrize("k1,k2", [(3, 3), (4, 5), (6, 5), (7, 2)])
def test_intersection_matches_stacked_solve(rng, k1, k2):
    n = 4
    v, w = random_subspace(rng, n, k1), random_subspace(rng, n, k2)
    # V a = W b  <=>  [V, -W](a, b) = 0
    nullity = null_space(np.hstack([v.real_frame, -w.real_frame])).shape[1]
    assert real_intersect(v, w).dim == nullity == max(0, k1 + k2 - 2 * n)


def test_intersection_with_shared_part(rng):
    n = 4
    common = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    a = np.hstack([common, rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))])
    b = np.hstack([common, rng.standard_normal((n, 3)) + 1j * rng.standard_normal((n, 3))])
    v, w = real_orthonormalize(a), real_orthonormalize(b)
    nullity = null_space(np.hstack([v.real_frame, -w.real_frame])).shape[1]
    inter = real_intersect(v, w)
    assert inter.dim == nullity == 2
    assert is_subspace(real_orthonormalize(common), inter)


def test_standardness_predicates():
    assert is_cyclic(real_form(3)) and is_separating(real_form(3))
    line = real_orthonormalize([np.array([1, 0]), np.array([1j, 0])])
    assert not is_separating(line)
    assert not is_cyclic(real_orthonormalize([np.array([1, 0])]))
    assert not is_standard(full_space(2))


def test_distance_values():
    v = real_form(3)
    assert subspace_distance(v, v) == 0.0
    # realified: projectors diag(1,1,1,0,0,0) vs diag(0,0,0,1,1,1)
    p, q = np.diag([1.0] * 3 + [0.0] * 3), np.diag([0.0] * 3 + [1.0] * 3)
    assert np.isclose(np.linalg.norm(p - q, 2), 1.0)
    assert np.isclose(subspace_distance(v, multiply_by_i(v)), 1.0)


@pytest.mark.parametrize("theta", [0.1, 0.7, 1.3])
def test_distance_principal_angle(theta):
    line = real_form(1)
    rotated = real_orthonormalize([np.array([np.exp(1j * theta)])])
    assert np.isclose(subspace_distance(line, rotated), np.sin(theta), atol=1e-12)


def test_span_empty_is_zero():
    assert span(np.zeros((3, 0)), 3).dim == 0
    assert zero_subspace(3).dim == 0


def test_antilinear_algebra(rng):
    n = 3
    m1 = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    m2 = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
    t1, t2 = AntilinearOp(m1), AntilinearOp(m2)
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    w = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    assert np.allclose(t1(t2(z)), t1.compose(t2) @ z)
    # <T^dag w, z> = <T z, w>
    assert np.isclose(np.vdot(t1.adjoint()(w), z), np.vdot(t1(z), w))
    assert AntilinearOp(np.eye(n)).is_involution()


@settings(max_examples=60, deadline=None)
@given(n=st.integers(2, 6), k1=st.integers(1, 12), k2=st.integers(1, 12), seed=st.integers(0, 2**32 - 1))
def test_lattice_laws(n, k1, k2, seed):
    rng = np.random.default_rng(seed)
    v = random_subspace(rng, n, min(k1, 2 * n))
    w = random_subspace(rng, n, min(k2, 2 * n))
    s = real_sum(v, w)
    assert is_subspace(v, s, 1e-8) and is_subspace(w, s, 1e-8)
    i = real_intersect(v, w)
    assert is_subspace(i, v, 1e-8) and is_subspace(i, w, 1e-8)
    vi = real_sum(v, multiply_by_i(v))
    assert vi.dim % 2 == 0 and vi.dim <= 2 * n


@pytest.mark.parametrize("n", range(2, 7))
def test_lattice_laws_seeded(n):
    rng = np.random.default_rng(n)
    for _ in range(100):
        v = random_subspace(rng, n, int(rng.integers(1, 2 * n + 1)))
        w = random_subspace(rng, n, int(rng.integers(1, 2 * n + 1)))
        assert is_subspace(v, real_sum(v, w), 1e-8)
        assert is_subspace(real_intersect(v, w), v, 1e-8)


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_cyclic_iff_complement_separating(rng, k):
    n = 3
    for _ in range(10):
        v = random_subspace(rng, n, k)
        assert is_cyclic(v) == is_separating(symplectic_complement(v))
