"""Declarative experiment descriptions loaded from JSON plus command-line overrides."""
from dataclasses import dataclass, field, fields

from ..model import ENSEMBLES, VALUE_DISTS

KINDS = ("recover", "rip", "coherence", "audit", "phase", "counterexample")
ALGORITHMS = ("omp", "romp")
LEMMAS = ("ip", "prip", "hbound", "linf", "prop32", "lemma37")


class SpecError(ValueError):
    """Invalid experiment description; ``field`` names the offending entry."""

    def __init__(self, field_name, message):
        super().__init__(f"{field_name}: {message}")
        self.field = field_name


def _int_list(name, value):
    items = value if isinstance(value, (list, tuple)) else [value]
    try:
        out = [int(v) for v in items]
    except (TypeError, ValueError):
        raise SpecError(name, f"expected integer(s), got {value!r}") from None
    if not out:
        raise SpecError(name, "range must be nonempty")
    if any(v < 1 for v in out):
        raise SpecError(name, f"values must be positive, got {out}")
    return out


@dataclass
class ExperimentSpec:
    """One CLI run. ``m`` and ``k`` are lists so phase sweeps share the type;
    single-point kinds use their first element."""

    kind: str
    seed: int
    m: list = None
    n: int = None
    k: list = None
    ensemble: str = "gaussian"
    eps: float = 0.05
    trials: int = 1
    algorithm: str = "omp"
    value_dist: str = "gaussian"
    mode: str = "exact"
    budget: int = None
    lemmas: list = field(default_factory=lambda: list(LEMMAS))
    delta: float = None
    normalize: bool = False
    matrix_path: str = None
    signal_path: str = None
    output: str = None

    @classmethod
    def from_dict(cls, d):
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise SpecError(sorted(unknown)[0], "unknown field")
        for required in ("kind", "seed"):
            if d.get(required) is None:
                raise SpecError(required, "required (no wall-clock seeding)")
        spec = cls(**d)
        spec.validate()
        return spec

    def validate(self):
        if self.kind not in KINDS:
            raise SpecError("kind", f"expected one of {KINDS}, got {self.kind!r}")
        try:
            self.seed = int(self.seed)
        except (TypeError, ValueError):
            raise SpecError("seed", f"expected an integer, got {self.seed!r}") from None
        if self.m is not None:
            self.m = _int_list("m", self.m)
        if self.k is not None:
            self.k = _int_list("k", self.k)
        if self.n is not None:
            self.n = _int_list("n", self.n)[0]
        if self.ensemble not in ENSEMBLES:
            raise SpecError("ensemble", f"expected one of {ENSEMBLES}, got {self.ensemble!r}")
        if self.algorithm not in ALGORITHMS:
            raise SpecError("algorithm", f"expected one of {ALGORITHMS}, got {self.algorithm!r}")
        if self.value_dist not in VALUE_DISTS:
            raise SpecError("value_dist", f"expected one of {VALUE_DISTS}, got {self.value_dist!r}")
        if self.mode not in ("exact", "sampled"):
            raise SpecError("mode", f"expected 'exact' or 'sampled', got {self.mode!r}")
        if int(self.trials) != self.trials or self.trials < 1:
            raise SpecError("trials", f"must be a positive integer, got {self.trials}")
        self.trials = int(self.trials)
        if self.eps is None or self.eps < 0:
            raise SpecError("eps", f"must be nonnegative, got {self.eps}")
        if self.budget is not None and self.budget < 1:
            raise SpecError("budget", f"must be positive, got {self.budget}")
        if isinstance(self.lemmas, str):
            self.lemmas = [s for s in self.lemmas.split(",") if s]
        bad = [name for name in self.lemmas if name not in LEMMAS]
        if bad:
            raise SpecError("lemmas", f"unknown lemma {bad[0]!r}; expected names from {LEMMAS}")
        if not self.lemmas:
            raise SpecError("lemmas", "at least one lemma is required")
        needs_dims = self.kind in ("recover", "rip", "coherence", "phase") and self.matrix_path is None
        if needs_dims and (self.m is None or self.n is None):
            raise SpecError("m" if self.m is None else "n", "required unless matrix_path is given")
        if self.kind in ("recover", "rip", "phase") and self.k is None and self.signal_path is None:
            raise SpecError("k", "required")
        return self
