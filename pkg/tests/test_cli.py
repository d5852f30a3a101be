import csv
import json

import pytest

from liftlab.cli import main
from liftlab.serialize import read_json


def run(args):
    return main(args)


def test_build_and_verify_rp3(tmp_path):
    path = tmp_path / "rp3.json"
    assert run(["build", "rp3", "--k", "2", "--out", str(path)]) == 0
    assert run(["verify", str(path)]) == 0
    obj = read_json(path)
    assert obj["dims"] == {"0": 4, "1": 12, "2": 16, "3": 8}


def test_homology_output(tmp_path, capsys):
    path = tmp_path / "rp3.json"
    run(["build", "rp3", "--k", "3", "--out", str(path)])
    assert run(["homology", str(path)]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["betti_z2"] == {"0": 1, "1": 1, "2": 1, "3": 1}
    assert out["torsion"]["1"] == [2]


def test_verify_rejects_corrupt_file(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{broken")
    assert run(["verify", str(bad)]) == 2


def test_verify_flags_broken_complex(tmp_path):
    path = tmp_path / "cx.json"
    run(["build", "rp3", "--k", "2", "--out", str(path)])
    obj = read_json(path)
    obj["boundaries"]["2"]["entries"][0][2] = 1  # corrupt one coefficient
    path.write_text(json.dumps(obj))
    assert run(["verify", str(path)]) == 1


def test_lift_and_solve_code_c(tmp_path):
    code_path = tmp_path / "c.json"
    assert run(["build", "code_c", "--k", "2", "--n", "1",
                "--out", str(code_path)]) == 0
    # the cellular lift of C fails verification before correction
    assert run(["lift", str(code_path), "--mode", "cellular",
                "--out", str(tmp_path / "lift.json")]) == 1
    assert read_json(tmp_path / "lift.json")["error_zero"] is False
    # explicit solution certifies it
    assert run(["solve", str(code_path), "--strategy", "explicit",
                "--out", str(tmp_path / "sol.json")]) == 0
    assert read_json(tmp_path / "sol.json")["verified"] is True
    # code B lifts cleanly
    b_path = tmp_path / "b.json"
    run(["build", "code_b", "--k", "2", "--n", "1", "--out", str(b_path)])
    assert run(["lift", str(b_path), "--mode", "cellular"]) == 0


def test_solve_search_report(tmp_path):
    code_path = tmp_path / "c.json"
    run(["build", "code_c", "--k", "2", "--out", str(code_path)])
    out = tmp_path / "rep.json"
    assert run(["solve", str(code_path), "--strategy", "greedy",
                "--budget", "500", "--seed", "1", "--out", str(out)]) == 0
    rep = read_json(out)
    assert rep["verified"] is True
    assert rep["strategy"] == "greedy"
    # determinism: same config gives byte-identical output
    out2 = tmp_path / "rep2.json"
    run(["solve", str(code_path), "--strategy", "greedy",
         "--budget", "500", "--seed", "1", "--out", str(out2)])
    assert out.read_text() == out2.read_text()


def test_ansatz_exit_codes(tmp_path):
    c_path = tmp_path / "c.json"
    run(["build", "code_c", "--k", "2", "--n", "1", "--out", str(c_path)])
    assert run(["ansatz", str(c_path)]) == 0
    b_path = tmp_path / "b.json"
    run(["build", "code_b", "--k", "2", "--n", "1", "--out", str(b_path)])
    assert run(["ansatz", str(b_path)]) == 1


def test_local_lift_pipeline(tmp_path):
    s_path = tmp_path / "s.json"
    assert run(["build", "random_sited", "--n", "3", "--k", "2",
                "--seed", "5", "--out", str(s_path)]) == 0
    out = tmp_path / "lift.json"
    assert run(["local-lift", str(s_path), "--out", str(out)]) == 0
    rep = read_json(out)
    assert rep["ok"] is True
    assert rep["checks"]["torsion_free"] is True


def test_telescope_requires_profile(capsys):
    assert run(["build", "telescope"]) == 2


def test_sweep_emits_table_and_figure(tmp_path):
    out_dir = tmp_path / "sweep"
    assert run(["sweep", "--profile", "2", "--budget", "200",
                "--seed", "1", "--out", str(out_dir)]) == 0
    with open(out_dir / "trend.csv") as fh:
        rows = list(csv.DictReader(fh))
    assert len(rows) == 1 and rows[0]["k"] == "2"
    assert rows[0]["verified"] == "True"
    png = (out_dir / "trend.png").read_bytes()
    assert png[:8] == b"\x89PNG\r\n\x1a\n"


def test_missing_file_is_usage_error():
    assert run(["homology", "/nonexistent/file.json"]) == 2
