"""Dense real linear algebra used by the pursuit algorithms and verifiers.

Matrices are plain ``numpy.ndarray`` objects of dtype float64 stored
row-major (C order): entry ``(i, j)`` of an ``M x N`` matrix lives at flat
offset ``i * N + j``. Index sets are 0-based sequences of column indices.

Least squares and projections go through a Householder QR factorization
(LAPACK ``geqrf`` via numpy); the normal equations are never formed.
"""
from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .errors import BadDimensions, RankDeficient

RANK_TOL = 1e-10


def as_matrix(a, name="matrix"):
    """Validate and return ``a`` as a finite, C-contiguous float64 2-D array."""
    arr = np.ascontiguousarray(a, dtype=np.float64)
    if arr.ndim != 2:
        raise BadDimensions(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise BadDimensions(f"{name} must have at least one row and column, got {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or Inf")
    return arr


def as_index_set(indices, n=None):
    """Return ``indices`` as a tuple of distinct ints, preserving order."""
    idx = tuple(int(i) for i in indices)
    if len(set(idx)) != len(idx):
        raise ValueError(f"duplicate indices in {idx}")
    if n is not None and any(i < 0 or i >= n for i in idx):
        raise IndexError(f"indices {idx} out of range for {n} columns")
    return idx


def _qr_checked(a):
    """Reduced Householder QR of a tall matrix, raising on numerical rank loss."""
    m, k = a.shape
    if k > m:
        raise RankDeficient(f"{k} columns in {m} dimensions cannot be independent")
    q, r = np.linalg.qr(a, mode="reduced")
    sv = np.linalg.svd(r, compute_uv=False)
    if sv[0] == 0.0 or sv[-1] <= RANK_TOL * sv[0]:
        raise RankDeficient(
            f"columns are numerically dependent (sigma_min/sigma_max = "
            f"{sv[-1] / sv[0] if sv[0] else 0.0:.3e})"
        )
    return q, r


def least_squares(a, y):
    """Solve ``min_c ||y - a c||_2`` for a full-column-rank ``a``.

    Parameters
    ----------
    a : ndarray, shape (M, k)
        Design matrix, ``k <= M``. ``k == 0`` is allowed and yields an
        empty coefficient vector.
    y : ndarray, shape (M,)

    Returns
    -------
    coeffs : ndarray, shape (k,)
    residual_norm : float
        ``||y - a @ coeffs||_2``.

    Raises
    ------
    RankDeficient
        If the smallest singular value of ``a`` is at most ``1e-10`` times
        the largest.
    """
    a = np.asarray(a, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if a.ndim != 2 or y.shape != (a.shape[0],):
        raise BadDimensions(f"shapes {a.shape} and {y.shape} do not agree")
    if a.shape[1] == 0:
        return np.zeros(0), float(np.linalg.norm(y))
    q, r = _qr_checked(a)
    coeffs = solve_triangular(r, q.T @ y, lower=False)
    return coeffs, float(np.linalg.norm(y - a @ coeffs))


@dataclass(frozen=True)
class Projector:
    """Orthogonal projector onto the span of the columns ``basis_indices``."""

    basis_indices: tuple
    matrix: np.ndarray

    def complement(self):
        """Matrix of ``I - P``, the projector onto the orthogonal complement."""
        return np.eye(self.matrix.shape[0]) - self.matrix

    def apply(self, v):
        return self.matrix @ v


def _basis(phi, support):
    phi = as_matrix(phi, "Phi")
    support = as_index_set(support, phi.shape[1])
    if not support:
        return phi, support, None
    q, _ = _qr_checked(phi[:, list(support)])
    return phi, support, q


def projector(phi, support):
    """Orthogonal projector onto the range of ``phi[:, support]``.

    An empty ``support`` gives the zero matrix.
    """
    phi, support, q = _basis(phi, support)
    m = phi.shape[0]
    if q is None:
        return Projector((), np.zeros((m, m)))
    return Projector(support, q @ q.T)


def orthogonalized_matrix(phi, support):
    """``(I - P) @ phi``: columns of ``phi`` orthogonalized against ``phi[:, support]``.

    Columns indexed by ``support`` come out (numerically) zero. For an empty
    support a copy of ``phi`` is returned unchanged.
    """
    phi, support, q = _basis(phi, support)
    if q is None:
        return phi.copy()
    return phi - q @ (q.T @ phi)
