"""
Checking the recovery guarantees on a certified matrix
======================================================

Near-orthonormal square matrices reach isometry constants small enough
for the OMP guarantee (order K+1, delta < 1/(3 sqrt K)). Certify one by
enumeration, then run OMP on every K-sparse support. Then loosen the
matrix and recover strongly decaying signals instead.
"""
import itertools

import numpy as np

from greedylab import (
    SparseSignal,
    StoppingRule,
    exact_recovery,
    gen_decaying,
    gen_matrix,
    omp_recover,
    ordered_magnitudes,
    rip_exact,
)
from greedylab.theory import theorem1_condition, theorem2_alpha_threshold

n, k = 12, 3


def certified(eps_values, accept):
    """First perturbation size whose matrix has an accepted exact constant."""
    for eps in eps_values:
        phi = gen_matrix("identity_perturbed", n, n, seed=2, eps=eps)
        delta = rip_exact(phi, k + 1).delta
        if accept(delta):
            return phi, delta
    raise RuntimeError("no perturbation size qualified")


phi, delta = certified([0.2 * 0.9**i for i in range(40)], lambda d: d < theorem1_condition(k))
print(f"delta_{k + 1} = {delta:.4f}, threshold {theorem1_condition(k):.4f}")

rng = np.random.default_rng(0)
misses = 0
for support in itertools.combinations(range(n), k):
    x = SparseSignal(n, support, rng.choice([-1.0, 1.0], size=k))
    trace = omp_recover(phi, phi @ x.dense(), StoppingRule.default(k))
    misses += not exact_recovery(trace.estimate, x.dense())
print(f"misses over all {len(list(itertools.combinations(range(n), k)))} supports: {misses}")

# a looser matrix: the general guarantee no longer applies
phi, delta = certified([0.02 * 1.08**i for i in range(60)],
                       lambda d: theorem1_condition(k) < d < 0.3)
alpha = 1.05 * theorem2_alpha_threshold(delta, k)
print(f"\ndelta_{k + 1} = {delta:.4f}; decaying signals need ratio > {alpha / 1.05:.2f}")
for s in range(5):
    x = gen_decaying(n, k, alpha, seed=s)
    trace = omp_recover(phi, phi @ x.dense(), StoppingRule.default(k))
    print("  picked", trace.chosen_order(), "by magnitude", list(ordered_magnitudes(x).permutation),
          "exact:", exact_recovery(trace.estimate, x.dense()))
