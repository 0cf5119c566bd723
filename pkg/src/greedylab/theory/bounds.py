"""Numerical checks of the inequalities behind the OMP/ROMP recovery guarantees.

Every ``check_*`` function takes the isometry constant as an argument (the
caller computes it once with :func:`greedylab.model.rip_exact`) and returns
:class:`BoundCheck` records. A check is satisfied when
``lhs <= rhs + slack``; the slack only absorbs rounding.
"""
import math
from dataclasses import dataclass, field

import numpy as np

from ..errors import DeltaOutOfRange, PreconditionViolated, TooSmall, ZeroVector
from ..greedy import regularized_subset
from ..linalg import as_index_set, as_matrix, orthogonalized_matrix
from ..model import SparseSignal

SLACK = 1e-9


def default_slack(rhs):
    return SLACK * max(1.0, abs(rhs))


@dataclass(frozen=True)
class BoundCheck:
    name: str
    lhs: float
    rhs: float
    slack: float
    satisfied: bool
    context: dict = field(default_factory=dict)


def verdict(name, lhs, rhs, context=None, slack=None):
    lhs, rhs = float(lhs), float(rhs)
    slack = default_slack(rhs) if slack is None else float(slack)
    return BoundCheck(name, lhs, rhs, slack, lhs <= rhs + slack, dict(context or {}))


def _dense(v):
    return v.dense() if isinstance(v, SparseSignal) else np.asarray(v, dtype=np.float64)


def check_inner_product_lemma(psi, u, v, delta):
    """``|<Psi u, Psi v> - <u, v>| <= delta ||u|| ||v||``.

    ``delta`` must be valid for ``Psi`` at order ``max(||u+v||_0, ||u-v||_0)``.
    """
    psi = as_matrix(psi, "Psi")
    ud, vd = _dense(u), _dense(v)
    lhs = abs(float((psi @ ud) @ (psi @ vd)) - float(ud @ vd))
    rhs = delta * float(np.linalg.norm(ud)) * float(np.linalg.norm(vd))
    order = max(np.count_nonzero(ud + vd), np.count_nonzero(ud - vd))
    return verdict("ip", lhs, rhs, {"dims": psi.shape, "delta": delta, "order": int(order)})


def check_modified_rip(phi, support, u, k, delta):
    """Two-sided bound on ``||A_Lambda u||^2 / ||u||^2``.

    The record's ``lhs`` is the worst excess of the measured ratio beyond
    ``[1 - delta/(1-delta), 1 + delta]`` (nonpositive when both sides hold)
    and ``rhs`` is zero; the ratio and both bounds are kept in ``context``.
    """
    phi = as_matrix(phi, "Phi")
    support = as_index_set(support, phi.shape[1])
    u = u if isinstance(u, SparseSignal) else SparseSignal.from_dense(u)
    if not len(support) < k:
        raise PreconditionViolated(f"|Lambda| = {len(support)} must be smaller than K = {k}")
    if u.sparsity > k - len(support):
        raise PreconditionViolated(f"||u||_0 = {u.sparsity} exceeds K - |Lambda| = {k - len(support)}")
    if set(u.support) & set(support):
        raise PreconditionViolated("supp(u) overlaps Lambda")
    if not 0 <= delta < 1:
        raise DeltaOutOfRange(f"delta must lie in [0, 1), got {delta}")
    a = orthogonalized_matrix(phi, support)
    ratio = float(np.linalg.norm(a @ u.dense()) ** 2) / u.norm() ** 2
    lower, upper = 1.0 - delta / (1.0 - delta), 1.0 + delta
    excess = max(lower - ratio, ratio - upper)
    return verdict("prip", excess, 0.0, {
        "dims": phi.shape, "delta": delta, "K": k, "lambda_size": len(support),
        "ratio": ratio, "lower": lower, "upper": upper,
    })


def check_h_bound(phi, support, x_tilde, delta):
    """``|h(j) - x~(j)| <= delta/(1-delta) ||x~||`` for every ``j`` off ``Lambda``.

    Here ``h = A_Lambda^T A_Lambda x~``; ``delta`` must hold at order
    ``||x~||_0 + |Lambda| + 1``. Returns one record per ``j``.
    """
    phi = as_matrix(phi, "Phi")
    support = as_index_set(support, phi.shape[1])
    x_tilde = x_tilde if isinstance(x_tilde, SparseSignal) else SparseSignal.from_dense(x_tilde)
    if set(x_tilde.support) & set(support):
        raise PreconditionViolated("supp(x~) overlaps Lambda")
    if not 0 <= delta < 1:
        raise DeltaOutOfRange(f"delta must lie in [0, 1), got {delta}")
    a = orthogonalized_matrix(phi, support)
    xd = x_tilde.dense()
    h = a.T @ (a @ xd)
    rhs = delta / (1.0 - delta) * x_tilde.norm()
    ctx = {"dims": phi.shape, "delta": delta, "lambda_size": len(support),
           "sparsity": x_tilde.sparsity}
    in_lambda = set(support)
    return [
        verdict("hbound", abs(h[j] - xd[j]), rhs, {**ctx, "j": j})
        for j in range(phi.shape[1]) if j not in in_lambda
    ]


def identification_guarantee(x_tilde, delta):
    """Whether ``||x~||_inf > 2 delta/(1-delta) ||x~||_2``.

    When it holds, the largest ``|h(j)|`` falls inside ``supp(x~)``.
    """
    if not 0 <= delta < 1:
        raise DeltaOutOfRange(f"delta must lie in [0, 1), got {delta}")
    xd = _dense(x_tilde)
    return bool(np.max(np.abs(xd), initial=0.0) > 2.0 * delta / (1.0 - delta) * np.linalg.norm(xd))


def theorem1_condition(k):
    """Isometry threshold ``1/(3 sqrt(k))`` at order ``k + 1`` for OMP."""
    if k < 1:
        raise TooSmall(f"K must be at least 1, got {k}")
    return 1.0 / (3.0 * math.sqrt(k))


def infinity_norm_floor(u):
    """``||u||_2 / sqrt(||u||_0) <= ||u||_inf``, with 1e-12 relative slack."""
    u = _dense(u)
    nnz = np.count_nonzero(u)
    if nnz == 0:
        raise ZeroVector("the bound needs a nonzero vector")
    lhs = float(np.linalg.norm(u)) / math.sqrt(nnz)
    rhs = float(np.max(np.abs(u)))
    return verdict("linf", lhs, rhs, {"size": u.size, "sparsity": int(nnz)},
                   slack=1e-12 * max(lhs, rhs))


def theorem2_alpha_threshold(delta, k):
    """Minimum decay ratio that lets OMP recover in magnitude order when ``delta < 1/3``."""
    if not 0 <= delta < 1.0 / 3.0:
        raise DeltaOutOfRange(f"delta must lie in [0, 1/3), got {delta}")
    if k < 1:
        raise TooSmall(f"K must be at least 1, got {k}")
    t = 2.0 * delta / (1.0 - delta)
    return (1.0 + t * math.sqrt(k - 1)) / (1.0 - t)


def coherence_condition(mu, k):
    """``mu < 1/(2k - 1)``."""
    if not 0 <= mu <= 1:
        raise ValueError(f"mu must lie in [0, 1], got {mu}")
    return bool(mu < 1.0 / (2 * k - 1))


def check_prop32(psi, x, gamma, delta):
    """``||(Psi^T Psi x)|_Gamma - x|_Gamma|| <= delta ||x||``.

    ``delta`` must hold at order ``|supp(x) U Gamma|``.
    """
    psi = as_matrix(psi, "Psi")
    gamma = list(as_index_set(gamma, psi.shape[1]))
    xd = _dense(x)
    g = psi.T @ (psi @ xd)
    lhs = float(np.linalg.norm(g[gamma] - xd[gamma]))
    rhs = delta * float(np.linalg.norm(xd))
    order = len(set(np.flatnonzero(xd).tolist()) | set(gamma))
    return verdict("prop32", lhs, rhs, {"dims": psi.shape, "delta": delta, "order": order})


def check_lemma37(u):
    """Find a within-factor-2 subset ``Gamma`` of ``u`` holding enough energy.

    Returns ``(gamma, check)`` where the check compares
    ``||u|| / (2.5 sqrt(log2 K))`` against ``||u|_Gamma||``.
    """
    u = np.asarray(u, dtype=np.float64).reshape(-1)
    k = u.size
    if k < 2:
        raise TooSmall("the energy bound needs at least two entries")
    nonzero = np.flatnonzero(u)
    gamma = regularized_subset(u, nonzero) if nonzero.size else ()
    lhs = float(np.linalg.norm(u)) / (2.5 * math.sqrt(math.log2(k)))
    rhs = float(np.linalg.norm(u[list(gamma)]))
    return gamma, verdict("lemma37", lhs, rhs, {"K": k})


def theorem3_condition(k):
    """ROMP isometry threshold ``0.13 / sqrt(log2 k)`` at order ``3k``."""
    if k < 2:
        raise TooSmall("the ROMP threshold needs K >= 2; K = 1 is plain OMP")
    return 0.13 / math.sqrt(math.log2(k))


def romp_success_fraction(chosen, true_support):
    """``|Omega_0 & supp(x)| / |Omega_0|`` for one ROMP pass."""
    chosen = set(chosen)
    return len(chosen & set(true_support)) / len(chosen)
