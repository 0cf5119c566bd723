"""Orthogonal Matching Pursuit and Regularized OMP with per-iteration traces.

Both algorithms share one loop: correlate the residual with every column,
pick new indices, re-solve least squares on the selected columns from
scratch, and recompute the residual. They differ only in how indices are
picked. Indices are 0-based throughout; ties go to the smallest index, and
a column whose correlation is exactly zero is never selected.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import BadDimensions, EmptyCandidates, RankDeficient
from .linalg import as_matrix, least_squares

DEFAULT_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class StoppingRule:
    """Stop after ``max_iterations`` or once ``||r|| <= residual_tol * ||y||``.

    Either criterion may be ``None`` but not both.
    """

    max_iterations: int = None
    residual_tol: float = None

    def __post_init__(self):
        if self.max_iterations is None and self.residual_tol is None:
            raise ValueError("at least one stopping criterion must be active")
        if self.max_iterations is not None and self.max_iterations < 1:
            raise ValueError(f"max_iterations must be positive, got {self.max_iterations}")
        if self.residual_tol is not None and self.residual_tol < 0:
            raise ValueError(f"residual_tol must be nonnegative, got {self.residual_tol}")

    @classmethod
    def default(cls, k=None):
        """``k`` iterations when the sparsity is known, plus the residual test."""
        return cls(max_iterations=k, residual_tol=DEFAULT_RESIDUAL_TOL)

    def residual_met(self, residual_norm, y_norm):
        return self.residual_tol is not None and residual_norm <= self.residual_tol * y_norm


@dataclass(frozen=True)
class IterationRecord:
    """One pass of the loop.

    ``match`` is ``Phi.T @ r`` computed from the residual *entering* the
    iteration; ``support_after``, ``residual`` and ``residual_norm`` describe
    the state after the update. ``candidates`` is the top-K set examined by
    ROMP (``None`` for OMP).
    """

    iteration: int
    match: np.ndarray
    chosen: tuple
    support_after: tuple
    residual: np.ndarray
    residual_norm: float
    candidates: tuple = None


@dataclass
class RecoveryTrace:
    """Audit trail of a pursuit run.

    ``converged`` is true when the final residual satisfies the residual
    criterion (``1e-10`` relative when the rule has none).
    """

    y: np.ndarray
    records: list = field(default_factory=list)
    estimate: np.ndarray = None
    converged: bool = False

    @property
    def iterations_run(self):
        return len(self.records)

    @property
    def support(self):
        """Final selected set, in selection order."""
        return self.records[-1].support_after if self.records else ()

    def supports(self):
        """``[Lambda^0, Lambda^1, ...]`` with ``Lambda^0`` empty."""
        return [()] + [rec.support_after for rec in self.records]

    def residuals(self):
        """``[r^0, r^1, ...]`` with ``r^0 = y``."""
        return [self.y] + [rec.residual for rec in self.records]

    def chosen_order(self):
        return [i for rec in self.records for i in rec.chosen]


def exact_recovery(estimate, x, rtol=1e-6):
    """Support equality plus ``||x_hat - x|| <= rtol * ||x||``."""
    x = np.asarray(x, dtype=np.float64)
    estimate = np.asarray(estimate, dtype=np.float64)
    if not np.array_equal(np.flatnonzero(estimate), np.flatnonzero(x)):
        return False
    return float(np.linalg.norm(estimate - x)) <= rtol * float(np.linalg.norm(x))


def _omp_pick(h, support):
    mags = np.abs(h)
    mags[list(support)] = 0.0
    j = int(np.argmax(mags))
    if mags[j] == 0.0:
        return (), None
    return (j,), None


def regularized_subset(h, candidates=None):
    """Maximal-energy subset of ``candidates`` whose magnitudes lie within a factor 2.

    Parameters
    ----------
    h : array_like
        Match vector. When ``candidates`` is ``None`` every entry of ``h`` is
        a candidate.
    candidates : sequence of int, optional
        Indices into ``h`` forming the candidate set. ``h`` must be nonzero
        on all of them.

    Returns
    -------
    tuple of int
        Selected indices, ascending.

    Notes
    -----
    Any admissible subset fits in a band ``[m, 2m]`` where ``m`` is its
    smallest magnitude, and the full band is itself admissible with at least
    as much energy, so scanning the bands floored at each candidate finds the
    optimum. Equal-energy bands are resolved in favour of the band whose
    floor element has the smallest index.
    """
    h = np.asarray(h, dtype=np.float64)
    cand = np.arange(h.size) if candidates is None else np.asarray(candidates, dtype=np.int64)
    if cand.size == 0:
        raise EmptyCandidates("no candidates to regularize")
    mags = np.abs(h[cand])
    if np.any(mags == 0):
        raise ValueError("candidate entries must be nonzero")
    energy = mags**2
    in_band = (mags[None, :] >= mags[:, None]) & (mags[None, :] <= 2.0 * mags[:, None])
    band_energy = in_band.astype(np.float64) @ energy
    best = np.flatnonzero(band_energy == band_energy.max())
    floor = best[np.argmin(cand[best])]
    return tuple(sorted(int(i) for i in cand[in_band[floor]]))


def _romp_pick(k):
    def pick(h, support):
        mags = np.abs(h)
        mags[list(support)] = 0.0
        nonzero = np.flatnonzero(mags)
        if nonzero.size == 0:
            return (), ()
        order = nonzero[np.lexsort((nonzero, -mags[nonzero]))]
        omega = order[:k]
        return regularized_subset(h, omega), tuple(int(i) for i in np.sort(omega))

    return pick


def _pursuit(phi, y, stop, pick, support_cap=None):
    phi = as_matrix(phi, "Phi")
    y = np.asarray(y, dtype=np.float64).reshape(-1)
    if y.shape[0] != phi.shape[0]:
        raise BadDimensions(f"y has length {y.shape[0]}, Phi has {phi.shape[0]} rows")
    n = phi.shape[1]
    y_norm = float(np.linalg.norm(y))
    tol = stop.residual_tol if stop.residual_tol is not None else DEFAULT_RESIDUAL_TOL
    trace = RecoveryTrace(y=y, estimate=np.zeros(n))
    support = ()
    r = y
    r_norm = y_norm
    while True:
        if stop.residual_met(r_norm, y_norm):
            break
        if stop.max_iterations is not None and len(trace.records) >= stop.max_iterations:
            break
        if support_cap is not None and len(support) >= support_cap:
            break
        h = phi.T @ r
        chosen, candidates = pick(h, support)
        if not chosen:
            break
        new_support = support + tuple(chosen)
        try:
            coeffs, _ = least_squares(phi[:, list(new_support)], y)
        except RankDeficient as exc:
            trace.converged = r_norm <= tol * y_norm
            raise RankDeficient(str(exc), trace=trace) from exc
        x = np.zeros(n)
        x[list(new_support)] = coeffs
        r = y - phi @ x
        r_norm = float(np.linalg.norm(r))
        support = new_support
        trace.estimate = x
        trace.records.append(
            IterationRecord(len(trace.records), h, tuple(chosen), support, r, r_norm, candidates)
        )
    trace.converged = r_norm <= tol * y_norm
    return trace


def omp_recover(phi, y, stop=None):
    """Orthogonal Matching Pursuit.

    Each iteration adds the column with the largest ``|Phi.T @ r|`` (smallest
    index on ties) and re-fits ``y`` by least squares on all selected columns.

    Parameters
    ----------
    phi : ndarray, shape (M, N)
    y : ndarray, shape (M,)
    stop : StoppingRule, optional
        Defaults to the residual test alone.

    Returns
    -------
    RecoveryTrace

    Raises
    ------
    RankDeficient
        When the selected columns become dependent; the partial trace is on
        the exception's ``trace`` attribute.
    """
    return _pursuit(phi, y, stop or StoppingRule.default(), _omp_pick)


def romp_recover(phi, y, k, stop=None):
    """Regularized Orthogonal Matching Pursuit for sparsity level ``k``.

    Each iteration takes the ``k`` largest nonzero entries of ``|Phi.T @ r|``
    and adds their maximal-energy regularized subset. Stops on the residual
    test, after ``stop.max_iterations`` passes, or once ``2k`` indices are
    selected. The default rule allows ``k`` passes.
    """
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    return _pursuit(phi, y, stop or StoppingRule.default(k), _romp_pick(int(k)), support_cap=2 * k)
