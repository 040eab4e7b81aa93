import csv
import io
import json
import subprocess
import sys

import pytest

from logmgf.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def test_compute_json_schema(capsys):
    code, out = run_cli(
        capsys, "compute", "--mu", "0", "--sigma", "0.1", "--theta", "0.5",
        "--mc-samples", "50000", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert set(doc) == {"query", "results", "deltas", "timings"}
    assert doc["query"] == {"mu": 0.0, "sigma": 0.1, "theta": 0.5}
    methods = [r["method"] for r in doc["results"]]
    assert methods == ["zero_entropy", "thin_tile", "laplace_w", "monte_carlo"]
    values = [r["value"] for r in doc["results"]]
    # four estimates clustered on the same row
    assert all(abs(v - 1.65496) < 5e-4 for v in values)
    assert len(doc["deltas"]) == 6
    assert set(doc["timings"]) == set(methods)


def test_compute_theta_zero_all_methods_one(capsys):
    code, out = run_cli(
        capsys, "compute", "--mu", "0", "--sigma", "1", "--theta", "0",
        "--mc-samples", "10000", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    assert [r["value"] for r in doc["results"]] == [1.0, 1.0, 1.0, 1.0]


def test_compute_method_error_sets_exit_code(capsys):
    # Lambert argument 40 * 0.01 = 0.4 > 1/e: domain error surfaced per-row
    code, out = run_cli(
        capsys, "compute", "--mu", "0", "--sigma", "0.1", "--theta", "40",
        "--methods", "laplace", "--format", "json",
    )
    assert code == 1
    doc = json.loads(out)
    assert "error" in doc["results"][0]
    assert "value" not in doc["results"][0]


def test_compute_inside_positive_domain_succeeds(capsys):
    code, out = run_cli(
        capsys, "compute", "--mu", "0", "--sigma", "0.1", "--theta", "5",
        "--methods", "laplace", "--format", "json",
    )
    assert code == 0
    assert json.loads(out)["results"][0]["value"] > 0


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc_info:
        main(["table", "--id", "9"])
    assert exc_info.value.code == 2


def test_table_csv_format(capsys):
    code, out = run_cli(capsys, "table", "--id", "2", "--format", "csv",
                        "--mc-samples", "10000")
    assert code == 0
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["table", "mu", "sigma", "theta", "method", "value",
                       "paper_value", "error", "time_ms"]
    assert len(rows) == 1 + 5 * 4  # five thetas, four methods
    by_method = {(r[4], r[3]): r for r in rows[1:]}
    tile = by_method[("thin_tile", "-1")]
    assert float(tile[5]) == pytest.approx(0.367880, abs=2e-6)
    assert float(tile[6]) == 0.367880
    # 9 significant digits in the value column
    assert len(tile[5].replace(".", "").replace("-", "").lstrip("0")) <= 9


def test_table_json_includes_paper_values(capsys):
    code, out = run_cli(capsys, "table", "--id", "3", "--format", "json",
                        "--mc-samples", "10000")
    assert code == 0
    docs = json.loads(out)
    assert len(docs) == 5
    for doc in docs:
        for r in doc["results"]:
            assert "paper_value" in r
    # the documented asymmetry stays visible: zero-entropy far from tile row
    row4 = next(d for d in docs if d["query"]["theta"] == -4.0)
    ze = next(r for r in row4["results"] if r["method"] == "zero_entropy")
    tt = next(r for r in row4["results"] if r["method"] == "thin_tile")
    assert ze["value"] == pytest.approx(0.159668, abs=1e-3)
    assert tt["value"] == pytest.approx(0.098046, abs=3e-5)


def test_table_values_deterministic(capsys):
    def strip_timings(doc):
        for rep in doc:
            rep.pop("timings")
        return doc

    _, out1 = run_cli(capsys, "table", "--id", "1", "--format", "json",
                      "--mc-samples", "20000", "--seed", "4")
    _, out2 = run_cli(capsys, "table", "--id", "1", "--format", "json",
                      "--mc-samples", "20000", "--seed", "4")
    assert strip_timings(json.loads(out1)) == strip_timings(json.loads(out2))


def test_table_text_layout(capsys):
    code, out = run_cli(capsys, "table", "--id", "1", "--format", "text",
                        "--mc-samples", "10000")
    assert code == 0
    assert "zero_entropy" in out and "monte_carlo" in out
    assert "(paper)" in out


def test_paths_report(capsys):
    code, out = run_cli(
        capsys, "paths", "--mu", "0", "--sigma", "0.0625", "--theta", "-1",
        "--n", "4000", "--steps", "200", "--seed", "7", "--format", "json",
    )
    assert code == 0
    doc = json.loads(out)
    r = doc["results"]
    assert abs(r["standardized_mean_diff"]) < 4.0
    assert abs(r["standardized_variance_diff"]) < 4.0
    assert r["n_paths"] == 4000


def test_paths_csv(capsys):
    code, out = run_cli(
        capsys, "paths", "--mu", "0", "--sigma", "1e-4", "--theta", "-1",
        "--n", "1000", "--steps", "100", "--format", "csv",
    )
    assert code == 0
    rows = dict(r for r in csv.reader(io.StringIO(out)) if r[0] != "quantity")
    assert abs(float(rows["ensemble_mean"])) < 1e-3
    assert float(rows["ensemble_variance"]) < 1e-6


def test_dump_files(tmp_path, capsys):
    grid_path = tmp_path / "grid.csv"
    traj_path = tmp_path / "traj.csv"
    code, _ = run_cli(
        capsys, "compute", "--mu", "0", "--sigma", "0.5", "--theta", "-1",
        "--methods", "zero,tile", "--n-pairs", "200", "--steps", "50",
        "--dump-grid", str(grid_path), "--dump-trajectory", str(traj_path),
    )
    assert code == 0
    assert grid_path.read_text().startswith("n,x_n,s_n,dA_n,A_n")
    traj = traj_path.read_text().splitlines()
    assert traj[0] == "i,t,m,v"
    assert len(traj) == 52


def test_entry_point_exit_codes():
    ok = subprocess.run(
        [sys.executable, "-m", "logmgf.cli", "compute", "--mu", "0",
         "--sigma", "0.1", "--theta", "0.5", "--methods", "zero"],
        capture_output=True, text=True,
    )
    assert ok.returncode == 0
    usage = subprocess.run(
        [sys.executable, "-m", "logmgf.cli", "compute", "--mu", "0"],
        capture_output=True, text=True,
    )
    assert usage.returncode == 2
