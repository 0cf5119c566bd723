"""Verifiers for the recovery bounds and the OMP counterexample search."""
from .bounds import (
    SLACK,
    BoundCheck,
    check_h_bound,
    check_inner_product_lemma,
    check_lemma37,
    check_modified_rip,
    check_prop32,
    coherence_condition,
    identification_guarantee,
    infinity_norm_floor,
    romp_success_fraction,
    theorem1_condition,
    theorem2_alpha_threshold,
    theorem3_condition,
    verdict,
)
from .counterexample import Counterexample, counterexample_search, omp_fails
