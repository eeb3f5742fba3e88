import csv
import json

import pytest

from app.main import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_eval_writes_csv_row(capsys):
    code, out = run(capsys, "eval", "--kind", "X", "--n", "1", "--m", "0", "--point=0.3,-0.4,0.5")
    assert code == 0
    header, row = list(csv.reader(out.strip().splitlines()))
    assert ",".join(header) == "kind,index,a0,a1,a2,rho,theta,phi"
    assert row[:2] == ["X", "X[1,0,+]^i"]
    assert [float(v) for v in row[2:5]] == pytest.approx([0.6, -0.4, 0.5], rel=1e-14)


def test_eval_conjugate_and_json(capsys):
    code, out = run(capsys, "eval", "--kind", "Xbar", "--n", "0", "--m", "1", "--parity", "-", "--point=0.1,0.2,0.3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["command"] == "eval"
    assert payload["rows"][0]["a2"] == pytest.approx(1.0)


def test_eval_exit_codes(capsys):
    assert main(["eval", "--kind", "U", "--n", "2", "--m", "3", "--point=0.1,0.2,0.3"]) == 2
    assert main(["eval", "--kind", "U", "--n", "2", "--m", "0", "--parity", "minus", "--point=0.1,0.2,0.3"]) == 2
    assert main(["eval", "--kind", "Z", "--n", "-2", "--m", "0", "--point=0,0,0"]) == 3
    assert main(["eval", "--kind", "U", "--n", "1", "--m", "0", "--point=1,2"]) == 3
    capsys.readouterr()


def test_exp_point_and_missing_arguments(capsys):
    code, out = run(capsys, "exp", "--point=0,0,0")
    assert code == 0
    assert [float(v) for v in out.splitlines()[1].split(",")[4:]] == [1.0, 0.0, 0.0]
    assert main(["exp"]) == 2


def test_point_reports_keep_full_precision(capsys):
    code, out = run(capsys, "exp", "--point=1,0,0")
    assert code == 0
    a0 = out.splitlines()[1].split(",")[4]
    code, out = run(capsys, "exp", "--point=1,0,0", "--format", "json")
    assert code == 0
    assert a0 != "2.72"
    assert float(a0) == json.loads(out)["rows"][0]["a0"]


def test_exp_grid_json(capsys):
    code, out = run(capsys, "exp", "--variant", "Estar", "--grid", "--rho", "1.25", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"]["samples"] == 30 * 60
    assert payload["rows"][0]["rho"] == 1.25


def test_norms_within_tolerance(capsys, tmp_path):
    target = tmp_path / "reports" / "norms.json"
    code, out = run(capsys, "norms", "--max-degree", "2", "--tol", "1e-8", "--format", "json", "--output", str(target))
    assert code == 0
    assert out == ""
    payload = json.loads(target.read_text(encoding="utf-8"))
    assert payload["summary"]["max_rel_deviation"] <= 1e-8
    labels = {row["label"] for row in payload["rows"]}
    assert "VecX[1,0,+]^i" in labels
    assert "Ytilde[1,0,+]^i" in labels


def test_gram_tolerance_breach(capsys):
    assert main(["gram", "--family", "X", "--max-degree", "2", "--tol", "1e-300"]) == 4
    code, out = run(capsys, "gram", "--family", "cross", "--domain", "exterior", "--max-degree", "3", "--tol", "1e-8")
    assert code == 0
    assert out.startswith("row,col,value,expected,ratio")


def test_invalid_quadrature_sizes(capsys):
    assert main(["gram", "--azimuthal", "2"]) == 2
    capsys.readouterr()


def test_duality_report(capsys):
    code, out = run(capsys, "duality", "--max-degree", "3", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"]["max_residual"] <= 1e-12
    assert payload["summary"]["rows"] == len(payload["rows"])


def test_bergman_table_csv(capsys):
    code, out = run(capsys, "bergman-table", "--N", "2,3", "--rho", "0.3,0.5")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "rho,N=2,N=3"
    assert [line.split(",")[0] for line in lines[1:]] == ["0.3", "0.5"]
    for line in lines[1:]:
        for value in line.split(",")[1:]:
            assert value == f"{float(value):.3g}"


def test_bergman_table_rejects_negative_truncation(capsys):
    assert main(["bergman-table", "--N=-1,2", "--rho", "0.5"]) == 2
    assert main(["bergman-table", "--grid", "--N=-1,2"]) == 2
    capsys.readouterr()


def test_bergman_table_out_of_domain(capsys):
    assert main(["bergman-table", "--rho", "1.5"]) == 3
    assert main(["bergman-table", "--domain", "exterior", "--rho", "0.5"]) == 3
    capsys.readouterr()


def test_bergman_grid(capsys):
    code, out = run(capsys, "bergman-table", "--grid", "--N", "1,2", "--format", "json")
    assert code == 0
    payload = json.loads(out)
    assert payload["summary"]["rho"] == 0.9
    assert {row["N"] for row in payload["rows"]} == {1, 2}
