import json

import pytest

from varbound import cli


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(obj if isinstance(obj, str) else json.dumps(obj))
    return str(p)


def fields(out):
    return dict(line.split(": ", 1) for line in out.strip().splitlines())


def test_solve_two_separated_intervals(tmp_path, capsys):
    path = write(tmp_path, "a.json", {"lower": [0, 10], "upper": [1, 11]})
    assert cli.main(["solve", path, "--oracle-check"]) == 0
    f = fields(capsys.readouterr().out)
    assert float(f["max_variance"]) == pytest.approx(30.25, rel=1e-12)
    assert f["argmax"] == "[-1, +1]"
    assert f["oracle_agreement"] == "yes"


def test_solve_csv_and_json_out(tmp_path, capsys):
    path = write(tmp_path, "a.csv", "lower,upper\n0,1\n0,1\n")
    out = tmp_path / "r.json"
    assert cli.main(["solve", path, "--json-out", str(out)]) == 0
    data = json.loads(out.read_text())
    assert data["max_variance"] == pytest.approx(0.25)
    assert sorted(data["argmax_signs"]) == [-1, 1]


@pytest.mark.parametrize("payload", [
    {"lower": [1], "upper": [0]},
    {"lower": [0, 1], "upper": [1]},
    '{"lower": [NaN], "upper": [1]}',
    {"upper": [1]},
    "not json",
])
def test_solve_bad_input(tmp_path, capsys, payload):
    assert cli.main(["solve", write(tmp_path, "bad.json", payload)]) == 1
    assert "error" in capsys.readouterr().err


def test_solve_missing_file(capsys):
    assert cli.main(["solve", "/nonexistent/x.json"]) == 1


def test_solve_width_refusal(tmp_path, capsys):
    path = write(tmp_path, "w.json", {"lower": [0.0] * 70, "upper": [1.0] * 70})
    assert cli.main(["solve", path]) == 3
    captured = capsys.readouterr()
    assert "omega: 70" in captured.out
    assert "exceeds" in captured.err


def test_solve_oracle_mismatch(tmp_path, capsys, monkeypatch):
    path = write(tmp_path, "a.json", {"lower": [0, 10], "upper": [1, 11]})
    monkeypatch.setattr(cli, "brute_force_max", lambda inst: (99.0, [1, 1]))
    assert cli.main(["solve", path, "--oracle-check"]) == 2
    assert "oracle_agreement: NO" in capsys.readouterr().out


def test_gen_deterministic_and_round_trips(tmp_path, capsys):
    spec = ["center=gaussian:0,1", "radius=exp:2"]
    a, b = tmp_path / "a.json", tmp_path / "b.csv"
    assert cli.main(["gen", *spec, "--n", "50", "--seed", "7", "--out", str(a)]) == 0
    assert cli.main(["gen", *spec, "--n", "50", "--seed", "7", "--out", str(b)]) == 0
    ia, ib = cli.load_instance(str(a)), cli.load_instance(str(b))
    assert ia == ib and ia.n == 50
    assert cli.main(["gen", *spec, "--n", "50", "--seed", "7", "--format", "json"]) == 0
    assert capsys.readouterr().out == a.read_text()


def test_gen_reports_infinite_moment(capsys):
    assert cli.main(["gen", "center=uniform:0,1", "radius=pareto:1.2,1",
                     "--n", "3", "--eps", "0.5"]) == 0
    assert "infinite" in capsys.readouterr().err


def test_gen_bad_spec(capsys):
    assert cli.main(["gen", "center=uniform:1,0", "radius=exp:1", "--n", "3"]) == 1


def test_omega(tmp_path, capsys):
    path = write(tmp_path, "a.json", {"lower": [0, 0, 0], "upper": [1, 1, 1]})
    assert cli.main(["omega", path]) == 0
    assert fields(capsys.readouterr().out)["omega"] == "3"
    assert cli.main(["omega", "--spec", "center=uniform:0,1", "radius=const:0",
                     "--n", "20", "--seed", "1"]) == 0
    assert fields(capsys.readouterr().out)["omega"] == "1"


def test_experiment_repeatable(tmp_path, capsys):
    outs = []
    for i in range(2):
        csv_path = tmp_path / f"r{i}.csv"
        argv = ["experiment", "--spec", "center=uniform:0,1 radius=exp:1",
                "--n-list", "100,200", "--trials", "4", "--seed", "3",
                "--out-csv", str(csv_path), "--out-json", str(tmp_path / "s.json")]
        assert cli.main(argv) == 0
        outs.append(csv_path.read_text())
    assert outs[0] == outs[1]
    assert len(outs[0].strip().splitlines()) == 1 + 8
    summary = json.loads((tmp_path / "s.json").read_text())
    assert summary["per_n"][1]["n"] == 200


def test_bounds_table(capsys):
    assert cli.main(["bounds", "--n-list", "10000", "--json"]) == 0
    rows = json.loads(capsys.readouterr().out)
    assert rows[0]["alpha"] == 24.0
    assert rows[0]["expected_omega_bound"] == pytest.approx(7.72, abs=0.005)
    assert cli.main(["bounds", "--n-list", "100,1000", "--L", "0.01", "--gamma", "0"]) == 0
    assert capsys.readouterr().out.startswith("alpha = 1.0")
    assert cli.main(["bounds", "--n-list", "100", "--eps", "0"]) == 1
