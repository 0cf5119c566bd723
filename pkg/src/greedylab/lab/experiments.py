"""Experiment drivers behind the CLI: recovery runs, phase sweeps, bound audits.

Every random draw comes from a stream keyed on ``(seed, ...)`` so results are
a deterministic function of the experiment description regardless of evaluation order.
"""
from dataclasses import dataclass

import numpy as np

from ..errors import RankDeficient
from ..greedy import StoppingRule, exact_recovery, omp_recover, romp_recover
from ..model import SparseSignal, gen_matrix, gen_sparse, rip_exact
from ..theory import bounds
from .config import LEMMAS

_SUITE_IDS = {name: i for i, name in enumerate(LEMMAS)}


def substream(*key):
    """Independent generator for an integer key such as ``(seed, m, k, trial)``."""
    return np.random.default_rng(np.random.SeedSequence([int(v) for v in key]))


def _seed_from(rng):
    return int(rng.integers(0, 2**63 - 1))


def recover(phi, x, algorithm="omp", k=None):
    """Run one noise-free recovery; returns ``(trace, success)``.

    OMP gets exactly ``k`` iterations (``k`` defaults to the sparsity of
    ``x``); ROMP uses its default rule.
    """
    k = x.sparsity if k is None else k
    y = phi @ x.dense()
    if algorithm == "omp":
        trace = omp_recover(phi, y, StoppingRule.default(k))
    else:
        trace = romp_recover(phi, y, k)
    return trace, exact_recovery(trace.estimate, x.dense())


@dataclass(frozen=True)
class PhaseCell:
    m: int
    k: int
    trials: int
    successes: int
    mean_iterations: float

    @property
    def success_rate(self):
        return self.successes / self.trials

    def row(self):
        return [self.m, self.k, self.trials, self.successes, self.success_rate,
                float(self.mean_iterations)]


PHASE_HEADER = ["M", "K", "trials", "successes", "success_rate", "mean_iterations"]


def run_phase(m_values, k_values, n, trials, seed, ensemble="gaussian", algorithm="omp",
              eps=0.0, value_dist="gaussian"):
    """Empirical success rate over a grid of ``(M, K)``; cells sorted by ``(M, K)``."""
    cells = []
    for m in sorted(set(m_values)):
        for k in sorted(set(k_values)):
            successes, iters = 0, 0
            for t in range(trials):
                rng = substream(seed, m, k, t)
                phi = gen_matrix(ensemble, m, n, seed=_seed_from(rng), eps=eps)
                x = gen_sparse(n, k, value_dist, seed=_seed_from(rng))
                try:
                    trace, ok = recover(phi, x, algorithm)
                    iters += trace.iterations_run
                except RankDeficient as exc:
                    ok = False
                    iters += exc.trace.iterations_run if exc.trace else 0
                successes += ok
            cells.append(PhaseCell(m, k, trials, successes, iters / trials))
    return cells


# ---------------------------------------------------------------------------
# bound audits

AUDIT_HEADER = ["name", "lhs", "rhs", "satisfied", "seed", "dims"]


def _audit_matrix(rng, n_max):
    """Near-orthonormal square or Gaussian ``M x N`` test matrix with ``N <= n_max``."""
    n = int(rng.integers(6, n_max + 1))
    if rng.random() < 0.5:
        return gen_matrix("identity_perturbed", n, n, seed=_seed_from(rng),
                          eps=float(rng.uniform(0.0, 0.35)))
    m = int(rng.integers(max(4, n // 2), n + 1))
    return gen_matrix("gaussian", m, n, seed=_seed_from(rng), normalize=rng.random() < 0.5)


def _random_signal(rng, n, support):
    return SparseSignal(n, tuple(sorted(support)), rng.standard_normal(len(support)))


def _delta(phi, order, override):
    if override is not None:
        return float(override)
    return rip_exact(phi, order).delta


def _trial_ip(rng, n_max, k_max, override):
    phi = _audit_matrix(rng, n_max)
    n = phi.shape[1]
    k = int(rng.integers(1, min(k_max, phi.shape[0]) + 1))
    s = rng.choice(n, size=k, replace=False)
    su = s[rng.random(k) < 0.7]
    sv = s[rng.random(k) < 0.7]
    if su.size == 0:
        su = s[:1]
    if sv.size == 0:
        sv = s[-1:]
    u, v = _random_signal(rng, n, su), _random_signal(rng, n, sv)
    if rng.random() < 0.2:
        v = u
    order = len(set(u.support) | set(v.support))
    return [bounds.check_inner_product_lemma(phi, u, v, _delta(phi, order, override))]


def _trial_prip(rng, n_max, k_max, override):
    for _ in range(100):
        phi = _audit_matrix(rng, n_max)
        k = int(rng.integers(2, min(k_max, phi.shape[0]) + 1))
        delta = _delta(phi, k, override)
        if delta < 1:
            break
    n = phi.shape[1]
    lam_size = int(rng.integers(0, k))
    perm = rng.permutation(n)
    lam = tuple(int(i) for i in perm[:lam_size])
    s = int(rng.integers(1, k - lam_size + 1))
    u = _random_signal(rng, n, perm[lam_size:lam_size + s])
    return [bounds.check_modified_rip(phi, lam, u, k, delta)]


def _trial_hbound(rng, n_max, k_max, override):
    for _ in range(100):
        phi = _audit_matrix(rng, n_max)
        order = int(rng.integers(2, min(k_max, phi.shape[0]) + 1))
        delta = _delta(phi, order, override)
        if delta < 1:
            break
    n = phi.shape[1]
    lam_size = int(rng.integers(0, order - 1))
    perm = rng.permutation(n)
    lam = tuple(int(i) for i in perm[:lam_size])
    x_tilde = _random_signal(rng, n, perm[lam_size:order - 1])
    checks = bounds.check_h_bound(phi, lam, x_tilde, delta)
    # one row per trial: the index closest to (or furthest past) its bound
    return [max(checks, key=lambda c: c.lhs - c.rhs)]


def _trial_linf(rng, n_max, k_max, override):
    n = int(rng.integers(1, n_max + 1))
    u = np.zeros(n)
    nnz = int(rng.integers(1, n + 1))
    u[rng.choice(n, size=nnz, replace=False)] = rng.standard_normal(nnz) * rng.choice([1e-3, 1.0, 1e3])
    return [bounds.infinity_norm_floor(u)]


def _trial_prop32(rng, n_max, k_max, override):
    phi = _audit_matrix(rng, n_max)
    n = phi.shape[1]
    order = int(rng.integers(1, min(k_max, phi.shape[0]) + 1))
    s = rng.choice(n, size=order, replace=False)
    xs = s[: int(rng.integers(1, order + 1))]
    gamma = s[rng.random(order) < 0.6]
    if gamma.size == 0:
        gamma = s[-1:]
    x = _random_signal(rng, n, xs)
    real_order = len(set(xs.tolist()) | set(gamma.tolist()))
    return [bounds.check_prop32(phi, x, gamma, _delta(phi, real_order, override))]


def _trial_lemma37(rng, n_max, k_max, override):
    k = int(rng.integers(2, n_max + 1))
    u = rng.standard_normal(k) * np.exp(rng.uniform(-3, 3, size=k))
    return [bounds.check_lemma37(u)[1]]


_TRIALS = {
    "ip": _trial_ip,
    "prip": _trial_prip,
    "hbound": _trial_hbound,
    "linf": _trial_linf,
    "prop32": _trial_prop32,
    "lemma37": _trial_lemma37,
}


def run_audit(lemmas, trials, seed, n_max=16, k_max=4, delta=None):
    """Run ``trials`` randomized instances of each named check.

    Returns a list of ``(check, trial_seed_key)``. ``delta`` overrides the
    exact isometry constants; an override that is too small produces
    violations, which are reported as such.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    out = []
    for name in lemmas:
        if name not in _TRIALS:
            raise ValueError(f"unknown lemma {name!r}")
        for t in range(trials):
            rng = substream(seed, _SUITE_IDS[name], t)
            for check in _TRIALS[name](rng, n_max, k_max, delta):
                out.append((check, f"{seed}:{t}"))
    return out


def audit_rows(results):
    rows = []
    for check, key in results:
        dims = check.context.get("dims")
        dims = "x".join(str(d) for d in dims) if dims else str(check.context.get("K", check.context.get("size", "")))
        rows.append([check.name, check.lhs, check.rhs, str(check.satisfied).lower(), key, dims])
    return rows
