"""Sensing matrices, sparse test signals, coherence and isometry constants."""
import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import (
    BadDimensions,
    BudgetExceeded,
    ColumnsNotNormalized,
    DeltaOutOfRange,
)
from .linalg import as_matrix

ENSEMBLES = ("gaussian", "bernoulli", "identity_perturbed", "identity", "explicit")
VALUE_DISTS = ("gaussian", "unit_signs")
DEFAULT_RIP_BUDGET = 10**6
_CHUNK = 50_000


@dataclass(frozen=True, eq=False)
class SparseSignal:
    """A vector of length ``n`` given by its support and nonzero values.

    ``support`` holds strictly increasing 0-based indices; ``values[i]`` is the
    entry at ``support[i]``.
    """

    n: int
    support: tuple
    values: np.ndarray

    def __post_init__(self):
        support = tuple(int(i) for i in self.support)
        values = np.asarray(self.values, dtype=np.float64).reshape(-1)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "values", values)
        if self.n < 1:
            raise BadDimensions(f"dimension must be positive, got {self.n}")
        if len(support) != values.size:
            raise ValueError("support and values differ in length")
        if any(b <= a for a, b in zip(support, support[1:])):
            raise ValueError(f"support must be strictly increasing: {support}")
        if support and (support[0] < 0 or support[-1] >= self.n):
            raise IndexError(f"support {support} out of range for n={self.n}")
        if np.any(values == 0) or not np.all(np.isfinite(values)):
            raise ValueError("values must be finite and nonzero")

    @classmethod
    def from_dense(cls, x):
        x = np.asarray(x, dtype=np.float64).reshape(-1)
        idx = np.flatnonzero(x)
        return cls(x.size, tuple(idx), x[idx])

    @property
    def sparsity(self):
        return len(self.support)

    def dense(self):
        x = np.zeros(self.n)
        x[list(self.support)] = self.values
        return x

    def norm(self):
        return float(np.linalg.norm(self.values))

    def without(self, indices):
        """Copy with the entries at ``indices`` zeroed (the masked signal x~)."""
        drop = set(int(i) for i in indices)
        keep = [i for i, s in enumerate(self.support) if s not in drop]
        return SparseSignal(self.n, tuple(self.support[i] for i in keep), self.values[keep])

    def __eq__(self, other):
        if not isinstance(other, SparseSignal):
            return NotImplemented
        return (
            self.n == other.n
            and self.support == other.support
            and np.array_equal(self.values, other.values)
        )

    def __repr__(self):
        return f"SparseSignal(n={self.n}, support={self.support}, values={self.values.tolist()})"


@dataclass(frozen=True)
class OrderedMagnitudes:
    """Nonzero magnitudes sorted nonincreasing, with their original indices.

    ``permutation[p]`` is the original index of the ``p``-th largest entry.
    """

    magnitudes: np.ndarray
    permutation: tuple

    def padded(self, n):
        """Magnitudes padded with zeros to length ``n``."""
        out = np.zeros(n)
        out[: self.magnitudes.size] = self.magnitudes
        return out


@dataclass(frozen=True)
class RipReport:
    order: int
    delta: float
    mode: str  # "exact" or "sampled_lower_bound"
    witness_support: tuple
    supports_examined: int


# ---------------------------------------------------------------------------
# generators


def _random_orthogonal(n, rng):
    z = rng.standard_normal((n, n))
    q, r = np.linalg.qr(z)
    # sign fix makes the draw Haar distributed
    return q * np.where(np.diag(r) < 0, -1.0, 1.0)


def gen_matrix(ensemble, m, n, seed=None, eps=0.0, entries=None, normalize=False):
    """Draw an ``m x n`` sensing matrix.

    Parameters
    ----------
    ensemble : {"gaussian", "bernoulli", "identity_perturbed", "identity", "explicit"}
        ``gaussian`` has i.i.d. N(0, 1/m) entries, ``bernoulli`` has entries
        +-1/sqrt(m) with equal probability. ``identity_perturbed`` (square
        only) is a Haar orthogonal matrix times ``I + eps * E`` with ``E``
        standard normal, columns then renormalized to unit length; small
        ``eps`` gives small isometry constants. ``identity`` is ``I``.
        ``explicit`` passes ``entries`` through.
    m, n : int
    seed : int or None
    eps : float
        Perturbation size for ``identity_perturbed``.
    entries : array_like
        Matrix for ``explicit``.
    normalize : bool
        Rescale columns to unit norm afterwards (for coherence work).
    """
    if ensemble not in ENSEMBLES:
        raise ValueError(f"unknown ensemble {ensemble!r}; expected one of {ENSEMBLES}")
    if ensemble == "explicit":
        phi = as_matrix(entries, "entries")
        if phi.shape != (m, n):
            raise BadDimensions(f"explicit entries have shape {phi.shape}, expected {(m, n)}")
    else:
        if int(m) != m or int(n) != n or m < 1 or n < 1:
            raise BadDimensions(f"dimensions must be positive integers, got M={m}, N={n}")
        m, n = int(m), int(n)
        rng = np.random.default_rng(seed)
        if ensemble == "gaussian":
            phi = rng.standard_normal((m, n)) / math.sqrt(m)
        elif ensemble == "bernoulli":
            phi = np.where(rng.random((m, n)) < 0.5, -1.0, 1.0) / math.sqrt(m)
        else:
            if m != n:
                raise BadDimensions(f"{ensemble} requires M == N, got M={m}, N={n}")
            if ensemble == "identity":
                phi = np.eye(n)
            else:
                if eps < 0:
                    raise BadDimensions(f"eps must be nonnegative, got {eps}")
                q = _random_orthogonal(n, rng)
                phi = q @ (np.eye(n) + eps * rng.standard_normal((n, n)))
                phi /= np.linalg.norm(phi, axis=0)
    if normalize:
        norms = np.linalg.norm(phi, axis=0)
        if np.any(norms == 0):
            raise ValueError("cannot normalize a zero column")
        phi = phi / norms
    return phi


def _draw_support(n, k, rng):
    if not 1 <= k <= n:
        raise BadDimensions(f"need 1 <= K <= N, got K={k}, N={n}")
    return tuple(sorted(int(i) for i in rng.choice(n, size=k, replace=False)))


def gen_sparse(n, k, value_dist="gaussian", seed=None):
    """Random ``k``-sparse signal of length ``n`` with a uniform random support."""
    if value_dist not in VALUE_DISTS:
        raise ValueError(f"unknown value distribution {value_dist!r}")
    rng = np.random.default_rng(seed)
    support = _draw_support(n, k, rng)
    if value_dist == "unit_signs":
        values = np.where(rng.random(k) < 0.5, -1.0, 1.0)
    else:
        values = rng.standard_normal(k)
        while np.any(values == 0):
            values[values == 0] = rng.standard_normal(int(np.sum(values == 0)))
    return SparseSignal(n, support, values)


def gen_decaying(n, k, alpha, seed=None):
    """Random ``k``-sparse signal whose sorted magnitudes decay by at least ``alpha``.

    Magnitudes are built from the smallest up, each one ``alpha`` times the
    previous times a random factor in ``[1.01, 1.5)``, then scattered over a
    random support with random signs.
    """
    if not alpha > 1:
        raise ValueError(f"alpha must exceed 1, got {alpha}")
    rng = np.random.default_rng(seed)
    support = _draw_support(n, k, rng)
    mags = np.empty(k)
    mags[-1] = 1.0 + 0.5 * rng.random()
    for j in range(k - 2, -1, -1):
        mags[j] = alpha * mags[j + 1] * rng.uniform(1.01, 1.5)
    signs = np.where(rng.random(k) < 0.5, -1.0, 1.0)
    values = np.empty(k)
    values[rng.permutation(k)] = signs * mags
    return SparseSignal(n, support, values)


def ordered_magnitudes(x):
    """Sort the nonzero entries of ``x`` by magnitude, largest first.

    Ties are broken by ascending original index.
    """
    mags = np.abs(x.values)
    support = np.asarray(x.support, dtype=np.int64)
    order = np.lexsort((support, -mags))
    return OrderedMagnitudes(mags[order], tuple(int(i) for i in support[order]))


def decay_ratios(x):
    """Successive ratios ``|x'(j)| / |x'(j+1)|`` of the sorted magnitudes."""
    mags = ordered_magnitudes(x).magnitudes
    return mags[:-1] / mags[1:]


# ---------------------------------------------------------------------------
# coherence and isometry constants


def coherence(phi, tol=1e-8):
    """Largest absolute inner product between two distinct columns.

    Raises ``ColumnsNotNormalized`` unless every column norm is within ``tol``
    of one.
    """
    phi = as_matrix(phi, "Phi")
    norms = np.linalg.norm(phi, axis=0)
    if np.max(np.abs(norms - 1.0)) > tol:
        raise ColumnsNotNormalized(
            f"column norms deviate from 1 by up to {np.max(np.abs(norms - 1.0)):.3e}"
        )
    if phi.shape[1] < 2:
        return 0.0
    g = np.abs(phi.T @ phi)
    np.fill_diagonal(g, 0.0)
    return float(g.max())


def colex_supports(n, k):
    """All ``k``-subsets of ``range(n)`` as rows of an int array, colex order."""
    combos = np.array(list(combinations(range(n), k)), dtype=np.int64).reshape(-1, k)
    # lexsort keys run last-to-first, so the largest element is the primary key
    order = np.lexsort(combos.T)
    return combos[order]


def support_deltas(gram, supports):
    """Per-support deviation ``max(lambda_max - 1, 1 - lambda_min)`` of Gram blocks."""
    out = np.empty(len(supports))
    for start in range(0, len(supports), _CHUNK):
        s = supports[start : start + _CHUNK]
        w = np.linalg.eigvalsh(gram[s[:, :, None], s[:, None, :]])
        out[start : start + _CHUNK] = np.maximum(w[:, -1] - 1.0, 1.0 - w[:, 0])
    return out


def _check_order(phi, k):
    m, n = phi.shape
    if not 1 <= k <= min(m, n):
        raise BadDimensions(f"order K={k} must lie in [1, min(M, N)] = [1, {min(m, n)}]")


def rip_exact(phi, k, budget=DEFAULT_RIP_BUDGET):
    """Restricted isometry constant of order ``k`` by enumerating every support.

    The witness is the first maximizing support in colexicographic order.
    Raises ``BudgetExceeded`` when ``C(N, k)`` exceeds ``budget``.
    """
    phi = as_matrix(phi, "Phi")
    k = int(k)
    _check_order(phi, k)
    total = math.comb(phi.shape[1], k)
    if total > budget:
        raise BudgetExceeded(
            f"C({phi.shape[1]}, {k}) = {total} supports exceeds budget {budget}; "
            "use rip_sampled for a lower bound"
        )
    supports = colex_supports(phi.shape[1], k)
    deltas = support_deltas(phi.T @ phi, supports)
    best = int(np.argmax(deltas))
    return RipReport(k, max(float(deltas[best]), 0.0), "exact",
                     tuple(int(i) for i in supports[best]), total)


def rip_sampled(phi, k, trials, seed=None):
    """Lower bound on the isometry constant from ``trials`` random supports.

    Support ``t`` depends only on the seed and ``t``, so a longer run with the
    same seed examines a superset of a shorter one.
    """
    phi = as_matrix(phi, "Phi")
    k = int(k)
    _check_order(phi, k)
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    rng = np.random.default_rng(seed)
    n = phi.shape[1]
    gram = phi.T @ phi
    best_delta, best_support = -np.inf, None
    for start in range(0, trials, _CHUNK):
        rows = min(_CHUNK, trials - start)
        supports = np.sort(np.argsort(rng.random((rows, n)), axis=1)[:, :k], axis=1)
        deltas = support_deltas(gram, supports)
        i = int(np.argmax(deltas))
        if deltas[i] > best_delta:
            best_delta, best_support = float(deltas[i]), supports[i]
    return RipReport(k, max(best_delta, 0.0), "sampled_lower_bound",
                     tuple(int(i) for i in best_support), int(trials))


def modified_rip_bounds(delta, k, lambda_size):
    """Squared-norm bounds ``(1 - delta/(1-delta), 1 + delta)`` inherited by ``A_Lambda``.

    Valid for vectors with at most ``k - lambda_size`` nonzeros supported off
    ``Lambda`` when the matrix has isometry constant ``delta`` at order ``k``.
    """
    if not 0 <= delta < 1:
        raise DeltaOutOfRange(f"delta must lie in [0, 1), got {delta}")
    if not lambda_size < k:
        raise ValueError(f"|Lambda| = {lambda_size} must be smaller than K = {k}")
    return 1.0 - delta / (1.0 - delta), 1.0 + delta
