"""
Regularized OMP
===============

ROMP takes the K largest correlations, keeps the highest-energy group
whose magnitudes agree within a factor of two, and adds all of them at
once.
"""
import numpy as np

from greedylab import gen_matrix, gen_sparse, regularized_subset, romp_recover, rip_exact
from greedylab.theory import romp_success_fraction, theorem3_condition

print("regularized subset of (4, 3, 1):", regularized_subset([4.0, 3.0, 1.0]))

k = 2
phi = gen_matrix("identity_perturbed", 10, 10, seed=1, eps=0.01)
print(f"delta_{3 * k} = {rip_exact(phi, 3 * k).delta:.4f}, threshold {theorem3_condition(k):.4f}")

for s in range(4):
    x = gen_sparse(10, k, seed=s)
    trace = romp_recover(phi, phi @ x.dense(), k)
    fractions = [romp_success_fraction(r.chosen, x.support) for r in trace.records]
    print(f"support {x.support}: passes {[r.chosen for r in trace.records]}, "
          f"fraction correct per pass {fractions}, error {np.linalg.norm(trace.estimate - x.dense()):.1e}")

# a Gaussian matrix far from the hypothesis still usually works
phi = gen_matrix("gaussian", 60, 200, seed=4)
x = gen_sparse(200, 6, seed=5)
trace = romp_recover(phi, phi @ x.dense(), 6)
print("\nGaussian 60x200, K=6:", trace.iterations_run, "passes, final support size",
      len(trace.support), "error", f"{np.linalg.norm(trace.estimate - x.dense()):.1e}")
