"""Command-line interface.

Configuration comes from one JSON document (``--config FILE``, or ``-`` for
stdin) with command-line flags overriding individual fields. Exit status is 0
for success/PASS, 1 for a legitimate negative result (missed recovery,
failed audit, search found nothing) and 2 for usage or validation errors.
"""
import argparse
import json
import math
import sys

from ..errors import GreedyLabError, NotFound
from ..greedy import exact_recovery
from ..model import coherence, gen_matrix, gen_sparse, rip_exact, rip_sampled
from ..theory import coherence_condition, counterexample_search, theorem1_condition
from . import io
from .config import ExperimentSpec, SpecError
from .experiments import (
    AUDIT_HEADER,
    PHASE_HEADER,
    audit_rows,
    recover,
    run_audit,
    run_phase,
)

EXIT_OK, EXIT_NEGATIVE, EXIT_ERROR = 0, 1, 2


def _int_csv(text):
    return [int(t) for t in text.split(",") if t.strip()]


def build_parser():
    parser = argparse.ArgumentParser(prog="greedylab", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="kind", required=True)

    def common(p):
        p.add_argument("--config", help="JSON spec file, or - for stdin")
        p.add_argument("--seed", type=int)
        p.add_argument("--m", type=_int_csv, help="rows (comma list for sweeps)")
        p.add_argument("--n", type=int, help="columns")
        p.add_argument("--k", type=_int_csv, help="sparsity (comma list for sweeps)")
        p.add_argument("--ensemble")
        p.add_argument("--eps", type=float)
        p.add_argument("--trials", type=int)
        p.add_argument("--normalize", action="store_true", default=None)
        p.add_argument("--matrix", dest="matrix_path", help="matrix CSV instead of an ensemble")
        p.add_argument("--output", "-o")
        return p

    p = common(sub.add_parser("recover", help="recover one sparse signal, write a JSON trace"))
    p.add_argument("--algorithm", choices=["omp", "romp"])
    p.add_argument("--value-dist", dest="value_dist")
    p.add_argument("--signal", dest="signal_path", help="signal JSON instead of a generated one")

    p = common(sub.add_parser("rip", help="isometry constant, exact or sampled"))
    p.add_argument("--mode", choices=["exact", "sampled"])
    p.add_argument("--budget", type=int)

    common(sub.add_parser("coherence", help="mutual coherence and the coherence condition"))

    p = common(sub.add_parser("audit", help="randomized audits of the recovery bounds"))
    p.add_argument("--lemmas", help="comma list from ip,prip,hbound,linf,prop32,lemma37")
    p.add_argument("--delta", type=float, help="use this isometry constant instead of the exact one")

    p = common(sub.add_parser("phase", help="success-rate sweep over (M, K)"))
    p.add_argument("--algorithm", choices=["omp", "romp"])
    p.add_argument("--value-dist", dest="value_dist")

    p = common(sub.add_parser("counterexample", help="search for a K=2 matrix on which OMP fails"))
    p.add_argument("--budget", type=int)
    return parser


def load_spec(args):
    doc = {}
    if args.config:
        fh = sys.stdin if args.config == "-" else open(args.config)
        with fh:
            doc = json.load(fh)
        if not isinstance(doc, dict):
            raise SpecError("config", "top level must be a JSON object")
    for key, value in vars(args).items():
        if key == "config" or value is None:
            continue
        doc[key] = value
    if doc.get("kind") not in (None, args.kind):
        raise SpecError("kind", f"config says {doc['kind']!r} but command is {args.kind!r}")
    doc["kind"] = args.kind
    return ExperimentSpec.from_dict(doc)


def _matrix(spec):
    if spec.matrix_path:
        return io.read_matrix_csv(spec.matrix_path)
    return gen_matrix(spec.ensemble, spec.m[0], spec.n, seed=spec.seed, eps=spec.eps,
                      normalize=spec.normalize)


def _emit(spec, text):
    if spec.output:
        with open(spec.output, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_recover(spec):
    phi = _matrix(spec)
    if spec.signal_path:
        x = io.read_signal_json(spec.signal_path)
        if x.n != phi.shape[1]:
            raise SpecError("signal_path", f"signal length {x.n} != matrix columns {phi.shape[1]}")
    else:
        x = gen_sparse(phi.shape[1], spec.k[0], spec.value_dist, seed=spec.seed + 1)
    k = spec.k[0] if spec.k else x.sparsity
    trace, ok = recover(phi, x, spec.algorithm, k)
    _emit(spec, io.dump_trace(trace, spec.algorithm))
    verdict = "exact recovery" if ok else "MISS"
    print(f"{spec.algorithm}: {verdict} in {trace.iterations_run} iterations, "
          f"final residual {trace.records[-1].residual_norm if trace.records else 0.0:.3e}",
          file=sys.stderr)
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_rip(spec):
    phi = _matrix(spec)
    k = spec.k[0]
    if spec.mode == "exact":
        report = rip_exact(phi, k, **({"budget": spec.budget} if spec.budget else {}))
    else:
        report = rip_sampled(phi, k, spec.trials, seed=spec.seed)
    out = {
        "order": report.order,
        "delta": report.delta,
        "mode": report.mode,
        "witness_support": [i + 1 for i in report.witness_support],
        "supports_examined": report.supports_examined,
    }
    if k >= 2:
        kk = k - 1
        out["omp_threshold_for_K"] = {"K": kk, "threshold": theorem1_condition(kk),
                                      "satisfied": report.delta < theorem1_condition(kk)}
    _emit(spec, json.dumps(out, indent=2) + "\n")
    return EXIT_OK


def cmd_coherence(spec):
    phi = _matrix(spec)
    mu = coherence(phi)
    out = {"mu": mu}
    if spec.k:
        out["K"] = spec.k[0]
        out["condition"] = coherence_condition(mu, spec.k[0])
    _emit(spec, json.dumps(out, indent=2) + "\n")
    return EXIT_OK


def cmd_audit(spec):
    results = run_audit(spec.lemmas, spec.trials, spec.seed, delta=spec.delta)
    _emit(spec, io.rows_to_csv(AUDIT_HEADER, audit_rows(results)))
    violations = sum(not c.satisfied for c, _ in results)
    verdict = "PASS" if violations == 0 else "FAIL"
    print(f"audit {verdict}: {len(results)} checks, {violations} violations", file=sys.stderr)
    return EXIT_OK if violations == 0 else EXIT_NEGATIVE


def cmd_phase(spec):
    if spec.n is None:
        raise SpecError("n", "required for phase sweeps")
    cells = run_phase(spec.m, spec.k, spec.n, spec.trials, spec.seed, spec.ensemble,
                      spec.algorithm, spec.eps, spec.value_dist)
    _emit(spec, io.rows_to_csv(PHASE_HEADER, [c.row() for c in cells]))
    return EXIT_OK


def cmd_counterexample(spec):
    k = spec.k[0] if spec.k else 2
    try:
        found = counterexample_search(k, 1.0 / math.sqrt(k), budget=spec.budget or 2000,
                                      seed=spec.seed)
    except NotFound as exc:
        print(f"NotFound: {exc}", file=sys.stderr)
        return EXIT_NEGATIVE
    if spec.output:
        io.write_matrix_csv(spec.output + ".csv", found.phi)
        io.write_signal_json(spec.output + ".json", found.x)
    print(json.dumps({
        "K": k,
        "delta": found.rip.delta,
        "ceiling": 1.0 / math.sqrt(k),
        "shape": list(found.phi.shape),
        "support": [i + 1 for i in found.x.support],
        "omp_support": sorted(i + 1 for i in found.trace.support),
        "recovered": exact_recovery(found.trace.estimate, found.x.dense()),
        "candidates_evaluated": found.candidates_evaluated,
    }, indent=2))
    return EXIT_OK


COMMANDS = {
    "recover": cmd_recover,
    "rip": cmd_rip,
    "coherence": cmd_coherence,
    "audit": cmd_audit,
    "phase": cmd_phase,
    "counterexample": cmd_counterexample,
}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    try:
        spec = load_spec(args)
        return COMMANDS[spec.kind](spec)
    except (SpecError, GreedyLabError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
