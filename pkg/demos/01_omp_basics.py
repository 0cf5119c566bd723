"""
Recovering a sparse vector with OMP
===================================

Draw a Gaussian sensing matrix, measure a sparse vector, and watch
Orthogonal Matching Pursuit rebuild it one column at a time.
"""
import numpy as np

from greedylab import StoppingRule, exact_recovery, gen_matrix, gen_sparse, omp_recover

# 40 measurements of a length-128 vector with 5 nonzeros
phi = gen_matrix("gaussian", 40, 128, seed=0)
x = gen_sparse(128, 5, seed=1)
y = phi @ x.dense()

# OMP gets exactly K iterations; the residual test can stop it sooner
trace = omp_recover(phi, y, StoppingRule.default(5))

print("true support     :", x.support)
for rec in trace.records:
    print(f"iteration {rec.iteration}: picked {rec.chosen[0]:3d}, "
          f"largest |h| = {np.max(np.abs(rec.match)):.3f}, residual = {rec.residual_norm:.2e}")
print("exact recovery   :", exact_recovery(trace.estimate, x.dense()))

# The residual is y projected away from the chosen columns, so the match
# vector vanishes on everything already selected.
last = trace.records[-1]
print("max |Phi^T r| on the chosen set:", np.max(np.abs(phi[:, list(last.support_after)].T @ last.residual)))
