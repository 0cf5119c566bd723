import io as stdio
import json

import numpy as np
import pytest

from greedylab.lab import ExperimentSpec, SpecError, run_phase
from greedylab.lab import io
from greedylab.lab.cli import main
from greedylab.model import SparseSignal, gen_matrix


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


def test_recover_identity(tmp_path, capsys):
    out = tmp_path / "t.json"
    code, _, err = run(["recover", "--ensemble", "identity", "--m", "10", "--n", "10",
                        "--k", "3", "--seed", "4", "-o", str(out)], capsys)
    assert code == 0, err
    doc = json.loads(out.read_text())
    assert doc["iterations_run"] == 3 and "3 iterations" in err


def test_recover_deterministic_bytes(tmp_path, capsys):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert run(["recover", "--m", "20", "--n", "40", "--k", "3", "--seed", "9",
                    "-o", str(p)], capsys)[0] in (0, 1)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_recover_miss_exits_1(tmp_path, capsys):
    code, _, _ = run(["recover", "--m", "3", "--n", "60", "--k", "3", "--seed", "0",
                      "-o", str(tmp_path / "t.json")], capsys)
    assert code == 1


@pytest.mark.parametrize("argv", [
    ["recover", "--m", "0", "--n", "8", "--k", "2", "--seed", "1"],
    ["recover", "--m", "4", "--n", "8", "--k", "2"],
    ["recover", "--m", "4", "--n", "8", "--k", "2", "--seed", "1", "--ensemble", "nope"],
    ["audit", "--trials", "0", "--seed", "1"],
    ["audit", "--trials", "5", "--seed", "1", "--lemmas", "ip,bogus"],
    ["rip", "--matrix", "/nonexistent.csv", "--k", "2", "--seed", "0"],
    ["frobnicate"],
])
def test_validation_errors_exit_2(argv, capsys):
    code, _, err = run(argv, capsys)
    assert code == 2


def test_validation_message_names_field(capsys):
    _, _, err = run(["recover", "--m", "0", "--n", "8", "--k", "2", "--seed", "1"], capsys)
    assert err.startswith("error: m:")


def test_recover_from_files(tmp_path, capsys):
    phi = gen_matrix("identity_perturbed", 6, 6, seed=0, eps=0.01)
    io.write_matrix_csv(tmp_path / "phi.csv", phi)
    io.write_signal_json(tmp_path / "x.json", SparseSignal(6, (1, 4), [2.0, -1.0]))
    code, out, _ = run(["recover", "--matrix", str(tmp_path / "phi.csv"),
                        "--signal", str(tmp_path / "x.json"), "--seed", "0"], capsys)
    assert code == 0
    doc = json.loads(out)
    assert sorted(e["index"] for e in doc["estimate"]) == [2, 5]


def test_config_from_stdin(monkeypatch, capsys):
    cfg = {"seed": 2, "m": 6, "n": 6, "k": 2, "ensemble": "identity_perturbed", "eps": 0.0}
    monkeypatch.setattr("sys.stdin", stdio.StringIO(json.dumps(cfg)))
    code, out, _ = run(["rip", "--config", "-"], capsys)
    assert code == 0
    assert json.loads(out)["delta"] < 1e-12


def test_flags_override_config(tmp_path, capsys):
    cfg = tmp_path / "c.json"
    cfg.write_text(json.dumps({"seed": 2, "m": 5, "n": 9, "k": 2}))
    code, out, _ = run(["rip", "--config", str(cfg), "--k", "3"], capsys)
    assert code == 0 and json.loads(out)["order"] == 3


def test_rip_sampled_cli(capsys):
    code, out, _ = run(["rip", "--m", "8", "--n", "12", "--k", "2", "--seed", "1",
                        "--mode", "sampled", "--trials", "30"], capsys)
    assert code == 0 and json.loads(out)["mode"] == "sampled_lower_bound"


def test_coherence_cli(capsys):
    code, out, _ = run(["coherence", "--m", "30", "--n", "40", "--k", "2", "--seed", "0",
                        "--normalize"], capsys)
    doc = json.loads(out)
    assert code == 0 and 0 < doc["mu"] < 1 and "condition" in doc


def test_audit_cli_pass_and_csv(tmp_path, capsys):
    out = tmp_path / "audit.csv"
    code, _, err = run(["audit", "--trials", "20", "--seed", "3", "-o", str(out)], capsys)
    assert code == 0 and "PASS" in err
    rows = io.read_csv_rows(out.read_text())
    assert len(rows) == 6 * 20
    assert set(rows[0]) == {"name", "lhs", "rhs", "satisfied", "seed", "dims"}


def test_audit_cli_reports_understated_delta(capsys):
    code, out, err = run(["audit", "--trials", "30", "--seed", "3", "--lemmas", "ip,prop32",
                          "--delta", "0.0"], capsys)
    assert code == 1 and "FAIL" in err
    assert any(r["satisfied"] == "false" for r in io.read_csv_rows(out))


def test_phase_orthonormal_cells(capsys):
    code, out, _ = run(["phase", "--ensemble", "identity_perturbed", "--eps", "0",
                        "--m", "12", "--n", "12", "--k", "1,3,5", "--trials", "5",
                        "--seed", "0"], capsys)
    rows = io.read_csv_rows(out)
    assert code == 0 and [float(r["success_rate"]) for r in rows] == [1.0, 1.0, 1.0]
    assert out.startswith("# greedylab-csv v1\nM,K,trials,successes,success_rate,mean_iterations\n")


def test_phase_single_trial_rates():
    cells = run_phase([8, 16, 24], [2, 4], 32, 1, seed=5)
    assert all(c.success_rate in (0.0, 1.0) for c in cells)
    assert [(c.m, c.k) for c in cells] == [(m, k) for m in (8, 16, 24) for k in (2, 4)]


def test_phase_deterministic():
    a = run_phase([10, 20], [2], 30, 4, seed=1)
    b = run_phase([20, 10], [2], 30, 4, seed=1)
    assert a == b


def test_phase_coarse_monotonicity():
    lo, hi = run_phase([16, 48], [4], 64, 200, seed=0)
    assert hi.success_rate >= lo.success_rate
    assert hi.successes <= hi.trials


def test_counterexample_cli(tmp_path, capsys):
    prefix = str(tmp_path / "ce")
    code, out, _ = run(["counterexample", "--seed", "0", "-o", prefix], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["delta"] <= doc["ceiling"] and not doc["recovered"]
    assert io.read_matrix_csv(prefix + ".csv").shape == tuple(doc["shape"])
    code, _, _ = run(["counterexample", "--seed", "0", "--budget", "1", "--k", "2"], capsys)
    assert code in (0, 1)


# -- file formats ------------------------------------------------------------

def test_matrix_csv_round_trip(tmp_path):
    phi = gen_matrix("gaussian", 5, 7, seed=3)
    io.write_matrix_csv(tmp_path / "m.csv", phi)
    assert np.array_equal(io.read_matrix_csv(tmp_path / "m.csv"), phi)


def test_matrix_csv_ragged(tmp_path):
    (tmp_path / "m.csv").write_text("1,2\n3\n")
    with pytest.raises(ValueError):
        io.read_matrix_csv(tmp_path / "m.csv")


def test_signal_json_round_trip(tmp_path):
    x = SparseSignal(9, (0, 8), [0.1, -7.25])
    io.write_signal_json(tmp_path / "x.json", x)
    doc = json.loads((tmp_path / "x.json").read_text())
    assert doc == {"n": 9, "entries": [{"index": 1, "value": 0.1}, {"index": 9, "value": -7.25}]}
    assert io.read_signal_json(tmp_path / "x.json") == x


def test_float_format_round_trips():
    for v in (0.1, 1 / 3, 2.0**-1074, 1e300, -np.pi):
        assert float(io.fmt(v)) == v


def test_spec_validation():
    with pytest.raises(SpecError) as info:
        ExperimentSpec.from_dict({"kind": "phase", "seed": 1, "m": [], "n": 5, "k": 2})
    assert info.value.field == "m"
    with pytest.raises(SpecError):
        ExperimentSpec.from_dict({"kind": "recover", "m": 4, "n": 5, "k": 2})
    with pytest.raises(SpecError):
        ExperimentSpec.from_dict({"kind": "recover", "seed": 0, "m": 4, "n": 5, "k": 2, "color": 1})
