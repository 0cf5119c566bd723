"""Exception types raised across greedylab."""


class GreedyLabError(Exception):
    """Base class for all library errors."""


class RankDeficient(GreedyLabError, ValueError):
    """Selected columns are linearly dependent (or numerically so)."""

    def __init__(self, message, trace=None):
        super().__init__(message)
        # partial RecoveryTrace when raised from inside a pursuit loop
        self.trace = trace


class BadDimensions(GreedyLabError, ValueError):
    pass


class ColumnsNotNormalized(GreedyLabError, ValueError):
    pass


class BudgetExceeded(GreedyLabError, ValueError):
    """Support enumeration would exceed the configured budget; use rip_sampled."""


class DeltaOutOfRange(GreedyLabError, ValueError):
    pass


class PreconditionViolated(GreedyLabError, ValueError):
    pass


class EmptyCandidates(GreedyLabError, ValueError):
    pass


class ZeroVector(GreedyLabError, ValueError):
    pass


class TooSmall(GreedyLabError, ValueError):
    pass


class NotFound(GreedyLabError):
    """A best-effort search exhausted its budget without success."""
