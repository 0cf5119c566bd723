import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from greedylab.errors import RankDeficient
from greedylab.linalg import as_matrix, least_squares, orthogonalized_matrix, projector

from oracles import normal_equations


def test_orthonormal_columns_give_transpose_solution():
    rng = np.random.default_rng(0)
    q, _ = np.linalg.qr(rng.standard_normal((3, 2)))
    y = rng.standard_normal(3)
    c, res = least_squares(q, y)
    np.testing.assert_allclose(c, q.T @ y, atol=1e-14)
    assert np.linalg.norm(q.T @ (y - q @ c)) <= 1e-10 * np.linalg.norm(y)
    assert res == pytest.approx(np.linalg.norm(y - q @ c))


def test_consistent_system_has_zero_residual():
    rng = np.random.default_rng(1)
    a = rng.standard_normal((7, 3))
    y = a @ rng.standard_normal(3)
    _, res = least_squares(a, y)
    assert res <= 1e-10 * np.linalg.norm(y)


def test_matches_normal_equations():
    rng = np.random.default_rng(2)
    a = rng.standard_normal((4, 2))
    y = rng.standard_normal(4)
    c, _ = least_squares(a, y)
    np.testing.assert_allclose(c, normal_equations(a, y), rtol=1e-10)


def test_empty_design():
    c, res = least_squares(np.zeros((3, 0)), np.array([3.0, 4.0, 0.0]))
    assert c.shape == (0,) and res == 5.0


def test_rank_deficient_raises():
    a = np.array([[1.0, 2.0], [2.0, 4.0], [0.0, 0.0]])
    with pytest.raises(RankDeficient):
        least_squares(a, np.ones(3))
    with pytest.raises(RankDeficient):
        least_squares(np.ones((2, 3)), np.ones(2))


def test_as_matrix_rejects_nonfinite():
    with pytest.raises(ValueError):
        as_matrix([[1.0, np.nan]])


def test_projector_empty_support_is_zero():
    p = projector(np.eye(4), [])
    assert np.array_equal(p.matrix, np.zeros((4, 4)))


def test_projector_canonical_columns():
    p = projector(np.eye(6), [1, 4])
    np.testing.assert_array_equal(p.matrix, np.diag([0, 1, 0, 0, 1, 0.0]))


def test_projector_fixes_its_columns():
    rng = np.random.default_rng(3)
    phi = rng.standard_normal((6, 8))
    lam = [0, 2, 3]
    p = projector(phi, lam)
    cols = phi[:, lam]
    assert np.linalg.norm(p.matrix @ cols - cols) <= 1e-10 * np.linalg.norm(cols)
    assert np.linalg.norm(p.complement() @ cols) <= 1e-10 * np.linalg.norm(cols)


def test_orthogonalized_empty_is_phi():
    phi = np.random.default_rng(4).standard_normal((3, 5))
    assert np.array_equal(orthogonalized_matrix(phi, []), phi)


def test_orthogonalized_identity():
    a = orthogonalized_matrix(np.eye(4), [0])
    expected = np.eye(4)
    expected[0, 0] = 0.0
    np.testing.assert_allclose(a, expected, atol=1e-15)


def test_orthogonalized_columns_orthogonal_to_selected():
    phi = np.random.default_rng(5).standard_normal((5, 7))
    a = orthogonalized_matrix(phi, [1])
    assert np.max(np.abs(phi[:, 1] @ a)) <= 1e-10 * np.linalg.norm(phi)
    assert np.linalg.norm(a[:, 1]) <= 1e-10 * np.linalg.norm(phi)


dims = st.tuples(st.integers(2, 9), st.integers(1, 9), st.integers(0, 2**31 - 1))


@settings(max_examples=60, deadline=None)
@given(dims)
def test_projector_is_symmetric_idempotent(d):
    m, n, seed = d
    rng = np.random.default_rng(seed)
    phi = rng.standard_normal((m, n))
    lam = rng.choice(n, size=min(m, n, int(rng.integers(1, n + 1))), replace=False)
    p = projector(phi, lam).matrix
    scale = max(1.0, np.linalg.norm(p))
    assert np.linalg.norm(p @ p - p) <= 1e-10 * scale
    assert np.linalg.norm(p.T - p) <= 1e-10 * scale


@settings(max_examples=60, deadline=None)
@given(dims)
def test_pythagoras_split(d):
    m, n, seed = d
    rng = np.random.default_rng(seed)
    phi = rng.standard_normal((m, n))
    lam = rng.choice(n, size=min(m - 1, n - 1, 2), replace=False) if n > 1 else []
    u = rng.standard_normal(n)
    total = np.linalg.norm(phi @ u) ** 2
    parts = np.linalg.norm(projector(phi, lam).matrix @ phi @ u) ** 2 + np.linalg.norm(
        orthogonalized_matrix(phi, lam) @ u) ** 2
    assert abs(total - parts) <= 1e-9 * max(1.0, total)


@settings(max_examples=60, deadline=None)
@given(dims)
def test_residual_orthogonality(d):
    m, n, seed = d
    k = min(m, n)
    rng = np.random.default_rng(seed)
    a = rng.standard_normal((m, k))
    y = rng.standard_normal(m)
    c, _ = least_squares(a, y)
    assert np.linalg.norm(a.T @ (y - a @ c)) <= 1e-10 * np.linalg.norm(a) * np.linalg.norm(y)
