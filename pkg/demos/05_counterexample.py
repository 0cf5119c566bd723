"""
A matrix on which OMP fails
===========================

Order-3 isometry constant at most 1/sqrt(2), yet OMP with two iterations
cannot recover a particular 2-sparse vector: a decoy column correlates
with the sum of the two true columns more strongly than either does.
"""
import math

from greedylab.theory import counterexample_search, theorem1_condition

found = counterexample_search(k=2, seed=0)
print("matrix:\n", found.phi.round(4))
print(f"delta_3 = {found.rip.delta:.4f} (ceiling {1 / math.sqrt(2):.4f}, "
      f"guarantee needs < {theorem1_condition(2):.4f})")
print("true support:", found.x.support, " OMP picked:", found.trace.chosen_order())
print("first match vector:", found.trace.records[0].match.round(4))
