"""greedylab: OMP and ROMP with isometry-constant tools and bound verifiers."""
from . import errors
from .greedy import (
    IterationRecord,
    RecoveryTrace,
    StoppingRule,
    exact_recovery,
    omp_recover,
    regularized_subset,
    romp_recover,
)
from .linalg import Projector, least_squares, orthogonalized_matrix, projector
from .model import (
    OrderedMagnitudes,
    RipReport,
    SparseSignal,
    coherence,
    gen_decaying,
    gen_matrix,
    gen_sparse,
    modified_rip_bounds,
    ordered_magnitudes,
    rip_exact,
    rip_sampled,
)

__version__ = "0.1.0"
