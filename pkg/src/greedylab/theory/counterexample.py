"""Search for small matrices with a moderate isometry constant on which OMP fails.

Candidate family: ``K`` unit "support" columns with a common pairwise inner
product ``c`` and one unit "decoy" column with inner product ``b`` against
each of them. For ``y`` equal to the sum of the support columns the decoy
correlates as ``K b`` and a support column as ``1 + (K - 1) c``, so taking
``b > (1 + (K - 1) c) / K`` makes OMP's first pick the decoy. Negative ``c``
keeps the isometry constant of the ``K + 1`` core columns down. Candidates
are realized by a Cholesky factor of the target Gram matrix, rotated into
``M`` dimensions, padded with random unit columns, and refined by local
perturbation of the best failing candidate seen so far.
"""
import math
from dataclasses import dataclass

import numpy as np

from ..errors import NotFound
from ..greedy import StoppingRule, exact_recovery, omp_recover
from ..model import SparseSignal, _random_orthogonal, rip_exact


@dataclass
class Counterexample:
    phi: np.ndarray
    x: SparseSignal
    trace: object
    rip: object
    candidates_evaluated: int


def omp_fails(phi, x, k):
    """Run ``k`` OMP iterations on ``y = phi @ x``; true if recovery is not exact."""
    trace = omp_recover(phi, phi @ x.dense(), StoppingRule(max_iterations=k))
    failed = (set(trace.support) != set(x.support)) or not exact_recovery(trace.estimate, x.dense())
    return failed, trace


def _family_candidate(k, rng, max_extra):
    c = rng.uniform(-0.6 / max(k - 1, 1), 0.1)
    floor = (1.0 + (k - 1) * c) / k
    b = floor + rng.uniform(1e-3, 0.15)
    gram = np.full((k + 1, k + 1), c)
    gram[:k, k] = gram[k, :k] = b
    np.fill_diagonal(gram, 1.0)
    try:
        core = np.linalg.cholesky(gram).T
    except np.linalg.LinAlgError:
        return None
    extra = int(rng.integers(0, max_extra + 1))
    m = k + 1 + int(rng.integers(0, 2))
    n = k + 1 + extra
    cols = np.zeros((m, n))
    cols[: k + 1, : k + 1] = core
    if extra:
        pad = rng.standard_normal((m, extra))
        cols[:, k + 1 :] = pad / np.linalg.norm(pad, axis=0)
    phi = _random_orthogonal(m, rng) @ cols
    perm = rng.permutation(n)
    phi = phi[:, perm]
    # support columns are the first k of the core, wherever the shuffle sent them
    where = np.argsort(perm)
    support = tuple(sorted(int(where[i]) for i in range(k)))
    return phi, support


def _perturb(phi, rng, scale):
    out = phi + scale * rng.standard_normal(phi.shape)
    return out / np.linalg.norm(out, axis=0)


def counterexample_search(k=2, delta_ceiling=1.0 / math.sqrt(2.0), budget=2000, seed=0,
                          max_extra=2):
    """Look for ``(Phi, x)`` with ``delta_{k+1}(Phi) <= delta_ceiling`` where OMP misses ``x``.

    Parameters
    ----------
    k : int
        Sparsity; the signal has unit entries on ``k`` support columns.
    delta_ceiling : float
        Largest acceptable isometry constant at order ``k + 1``.
    budget : int
        Number of candidate matrices evaluated before giving up.
    seed : int
    max_extra : int
        Most random filler columns appended to the ``k + 1`` core columns.

    Returns
    -------
    Counterexample

    Raises
    ------
    NotFound
        If no candidate within ``budget`` meets both conditions.
    """
    rng = np.random.default_rng(seed)
    best = None  # (delta, phi, support) of the best failing candidate so far
    for i in range(budget):
        if best is not None and i % 2:
            phi = _perturb(best[1], rng, rng.choice([1e-3, 1e-2, 5e-2]))
            support = best[2]
        else:
            cand = _family_candidate(k, rng, max_extra)
            if cand is None:
                continue
            phi, support = cand
        if phi.shape[0] < k + 1:
            continue
        x = SparseSignal(phi.shape[1], support, np.ones(k))
        failed, trace = omp_fails(phi, x, k)
        if not failed:
            continue
        report = rip_exact(phi, k + 1)
        if report.delta <= delta_ceiling:
            return Counterexample(phi, x, trace, report, i + 1)
        if best is None or report.delta < best[0]:
            best = (report.delta, phi, support)
    raise NotFound(f"no counterexample within {budget} candidates (seed={seed})")
