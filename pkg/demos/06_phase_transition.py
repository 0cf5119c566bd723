"""
Empirical phase transition
==========================

Success rate of OMP over a grid of measurement counts M and sparsities
K for Gaussian matrices with N = 64. The same sweep is available as
``greedylab phase --m 8,16,24,32,48 --k 2,4,8 --n 64 --trials 50 --seed 0``.
"""
from greedylab.lab import run_phase

cells = run_phase([8, 16, 24, 32, 48], [2, 4, 8], n=64, trials=50, seed=0)
print("   M   K  success  mean iters")
for c in cells:
    print(f"{c.m:4d} {c.k:3d}  {c.success_rate:7.2f}  {c.mean_iterations:6.2f}")
