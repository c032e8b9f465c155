import json
import subprocess
import sys

import pytest

from hyplat.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_verify_single(capsys):
    code, out, err = run_cli(capsys, "verify", "--n", "3")
    assert code == 0
    assert "3,8,4,4,ok" in out
    assert "1 ok, 0 failed" in err


def test_verify_upto(capsys):
    code, out, err = run_cli(capsys, "verify", "--upto", "50")
    assert code == 0
    assert out.count("ok") == 12


def test_verify_json(capsys):
    code, out, _ = run_cli(capsys, "verify", "--n", "15", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["failed"] == 0
    assert obj["results"][0]["matrices"] == 16


def test_gamma_csv(capsys):
    code, out, _ = run_cli(capsys, "gamma", "--n", "3")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "a,b,c,d,x1,x2,x3,x4,y1,y2,y3,y4"
    assert len(lines) == 9


def test_measure_orbit_csv(capsys):
    code, out, _ = run_cli(capsys, "measure", "--n", "3")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "x,y,weight_num,weight_den,angle_float"
    assert lines[1].startswith("2,1,1,4,")


def test_measure_csv_lifts_to_circle_points(capsys):
    # directions scale back to the lattice points on radius^2 n^2-4
    code, out, _ = run_cli(capsys, "measure", "--n", "6")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[1].startswith("4,4,1,4,")
    pts = {tuple(map(int, ln.split(",")[:2])) for ln in lines[1:]}
    assert pts == {(4, 4), (-4, 4), (-4, -4), (4, -4)}


def test_measure_unrealized_exits_3(capsys):
    code, _, err = run_cli(capsys, "measure", "--n", "4")
    assert code == 3
    assert "not a realized" in err


def test_measure_requires_one_source(capsys):
    code, _, _ = run_cli(capsys, "measure", "--n", "3", "--circle", "5")
    assert code == 3
    code, _, _ = run_cli(capsys, "measure")
    assert code == 3


def test_measure_fourier_coefficient(capsys):
    code, out, _ = run_cli(capsys, "measure", "--n", "3", "--k", "2")
    assert code == 0
    obj = json.loads(out)
    assert obj["real"] == "3/5"
    assert obj["exact"] is True


def test_measure_raw_points(capsys):
    code, out, _ = run_cli(capsys, "measure", "--circle", "25", "--raw-points")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "x,y,even_x"
    assert len(lines) == 13


def test_measure_stats(capsys):
    code, out, _ = run_cli(capsys, "measure", "--n", "6", "--stats")
    assert code == 0
    obj = json.loads(out)
    assert obj["atoms"] == 4
    assert obj["c2_abs"] == 0.0
    assert obj["discrepancy"] == pytest.approx(0.25)


def test_w2_json_and_float(capsys):
    code, out, _ = run_cli(capsys, "w2", "--m", "45")
    assert code == 0
    assert json.loads(out)["W2"] == "-6/5"
    code, out, _ = run_cli(capsys, "w2", "--m", "45", "--float")
    assert json.loads(out)["W2"] == "-1.2"


def test_scan_stdout_jsonl(capsys):
    code, out, err = run_cli(capsys, "scan", "--hi", "10")
    assert code == 0
    lines = out.strip().split("\n")
    assert len(lines) == 9
    first = json.loads(lines[0])
    assert first["n"] == 2 and first["in_N"] is True
    assert "9 norms, 4 realized" in err


def test_scan_csv(capsys):
    code, out, _ = run_cli(capsys, "scan", "--hi", "10", "--format", "csv")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("n,in_N,r_star_m")
    assert lines[1].startswith("2,true,")


def test_scan_csv_checkpoint_rejected(capsys):
    code, _, err = run_cli(
        capsys, "scan", "--hi", "10", "--format", "csv",
        "--out", "/tmp/x.csv", "--checkpoint", "/tmp/x.ck",
    )
    assert code == 3
    assert "JSONL" in err


def test_scan_capacity_exit_code(capsys):
    code, _, err = run_cli(capsys, "scan", "--hi", str(10**9))
    assert code == 4
    assert "capacity" in err


def test_scan_to_file_and_census_from_scan(tmp_path, capsys):
    out_path = tmp_path / "scan.jsonl"
    code, _, _ = run_cli(capsys, "scan", "--hi", "600", "--out", str(out_path))
    assert code == 0
    code, out, _ = run_cli(capsys, "census", "--upto", "600", "--from-scan", str(out_path))
    assert code == 0
    obj = json.loads(out)
    assert obj["member_count"] == sum(
        1 for line in out_path.read_text().splitlines() if json.loads(line)["in_N"]
    )


def test_census_guard_exit(capsys):
    code, _, _ = run_cli(capsys, "census", "--upto", "50")
    assert code == 3


def test_hunt_asym_csv(capsys):
    code, out, _ = run_cli(capsys, "hunt-asym", "--upto", "100", "--delta", "0.5")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "n,r_star_m,c2_abs,W2_m,gamma_count,discrepancy"
    assert any(line.startswith("3,4,0.6,") for line in lines[1:])


def test_hunt_singular_runs(capsys):
    code, out, _ = run_cli(capsys, "hunt-singular", "--upto", "5000")
    assert code == 0
    assert out.startswith("n,r_star_m,Omega1_m,discrepancy,discrepancy_exact")


def test_primes_csv(capsys):
    code, out, _ = run_cli(capsys, "primes", "--upto", "300", "--eps", "0.1")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "p,x,y,angle"
    assert lines[1].startswith("101,10,1,")
    assert lines[2].startswith("197,14,1,")


def test_primes_compose(capsys):
    code, out, _ = run_cli(
        capsys, "primes", "--upto", "1000000", "--eps", "0.1",
        "--compose", "--p-lo", "5", "--p-hi", "700",
    )
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "n,p,q,realized,point_count,discrepancy"
    assert len(lines) > 1


def test_density_grid(capsys):
    code, out, _ = run_cli(capsys, "density", "--grid", "5")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "x,p"
    assert lines[1] == "0.0,1.0037418731973213"
    assert lines[3] == "0.5,0.9962720762207501"


def test_density_at(capsys):
    code, out, _ = run_cli(capsys, "density", "--at", "0.5")
    assert code == 0
    obj = json.loads(out)
    assert obj["closed"] == pytest.approx(0.9962720762207501)
    assert obj["cdf"] == 0.5


def test_realparts_n3(capsys):
    code, out, _ = run_cli(capsys, "realparts", "--n", "3")
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0] == "value_num,value_den,value_float"
    assert lines[1] == "0,1,0.0"
    assert lines[-1] == "1,2,0.5"


def test_realparts_window_with_ks(capsys):
    code, out, err = run_cli(capsys, "realparts", "--lo", "3", "--hi", "20", "--ks")
    assert code == 0
    assert "ks_statistic=" in err


def test_realparts_requires_args(capsys):
    code, _, _ = run_cli(capsys, "realparts")
    assert code == 3


def test_usage_error_exit_2():
    with pytest.raises(SystemExit) as exc:
        main(["scan", "--bogus-flag"])
    assert exc.value.code == 2
    with pytest.raises(SystemExit) as exc:
        main(["not-a-command"])
    assert exc.value.code == 2


def test_out_flag_writes_file(tmp_path, capsys):
    target = tmp_path / "out.csv"
    code, out, _ = run_cli(capsys, "gamma", "--n", "3", "--out", str(target))
    assert code == 0
    assert out == ""
    assert target.read_text().startswith("a,b,c,d,")


def test_output_reproducible(capsys):
    _, out1, _ = run_cli(capsys, "measure", "--n", "27")
    _, out2, _ = run_cli(capsys, "measure", "--n", "27")
    assert out1 == out2


def test_timestamp_flag_adds_header(capsys):
    _, out, _ = run_cli(capsys, "gamma", "--n", "3", "--timestamp")
    assert out.startswith("# generated_at=")


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "hyplat.cli", "verify", "--n", "6"],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "6,8,4,4,ok" in proc.stdout
