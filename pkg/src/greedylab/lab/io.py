"""File formats: matrix CSV, signal JSON, trace JSON and versioned result CSVs.

All serialized indices are 1-based; in memory they are 0-based.
"""
import csv
import io
import json

import numpy as np

from ..linalg import as_matrix
from ..model import SparseSignal

CSV_VERSION_LINE = "# greedylab-csv v1"
TRACE_FORMAT = "greedylab-trace v1"


def fmt(v):
    """17 significant digits: round-trips any double exactly."""
    return format(float(v), ".17g")


def write_matrix_csv(path, phi):
    with open(path, "w", newline="") as fh:
        for row in np.asarray(phi, dtype=np.float64):
            fh.write(",".join(fmt(v) for v in row) + "\n")


def read_matrix_csv(path):
    """Read a comma-separated matrix, one row per line; ``#`` lines are ignored."""
    rows = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            try:
                rows.append([float(tok) for tok in line.split(",")])
            except ValueError as exc:
                raise ValueError(f"{path}:{lineno}: {exc}") from None
    if not rows:
        raise ValueError(f"{path}: no matrix rows")
    if len({len(r) for r in rows}) != 1:
        raise ValueError(f"{path}: rows have differing lengths")
    return as_matrix(rows, str(path))


def signal_to_dict(x):
    return {
        "n": x.n,
        "entries": [{"index": i + 1, "value": float(v)} for i, v in zip(x.support, x.values)],
    }


def signal_from_dict(d):
    try:
        n = int(d["n"])
        entries = sorted(((int(e["index"]), float(e["value"])) for e in d["entries"]))
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed signal JSON: missing {exc}") from None
    return SparseSignal(n, tuple(i - 1 for i, _ in entries), np.array([v for _, v in entries]))


def write_signal_json(path, x):
    with open(path, "w") as fh:
        json.dump(signal_to_dict(x), fh, indent=2)
        fh.write("\n")


def read_signal_json(path):
    with open(path) as fh:
        return signal_from_dict(json.load(fh))


def trace_to_dict(trace, algorithm="omp"):
    est = trace.estimate
    nz = np.flatnonzero(est)
    return {
        "format": TRACE_FORMAT,
        "algorithm": algorithm,
        "m": int(trace.y.size),
        "n": int(est.size),
        "converged": bool(trace.converged),
        "iterations_run": trace.iterations_run,
        "iterations": [
            {
                "iteration": rec.iteration + 1,
                "chosen": [i + 1 for i in rec.chosen],
                "support": [i + 1 for i in rec.support_after],
                "residual_norm": rec.residual_norm,
            }
            for rec in trace.records
        ],
        "estimate": [{"index": int(i) + 1, "value": float(est[i])} for i in nz],
    }


def dump_trace(trace, algorithm="omp"):
    """Trace as JSON text. Python's float repr is the shortest exact round-trip form."""
    return json.dumps(trace_to_dict(trace, algorithm), indent=2) + "\n"


def rows_to_csv(header, rows):
    """Render rows under the version comment line; floats get 17 significant digits."""
    buf = io.StringIO()
    buf.write(CSV_VERSION_LINE + "\n")
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow([fmt(v) if isinstance(v, (float, np.floating)) else v for v in row])
    return buf.getvalue()


def read_csv_rows(text):
    """Parse text produced by :func:`rows_to_csv` into a list of dicts."""
    lines = text.splitlines()
    if not lines or lines[0] != CSV_VERSION_LINE:
        raise ValueError("missing greedylab CSV version line")
    return list(csv.DictReader(lines[1:]))
