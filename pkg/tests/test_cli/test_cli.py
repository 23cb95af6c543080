import os
import json
import tempfile

from shuttleswarm.bin.shuttleswarm_cli import main, EXIT_OK, EXIT_CONFIG, EXIT_VIOLATIONS

SCENARIO = dict(grid_rows=3, grid_cols=3, fleet_size=1, user_count=2, common_car_count=0,
                work_window=["08:00", "08:10"], step_seconds=5., seed=0)


def _scenario_file(**kwargs):
    d = dict(SCENARIO)
    d.update(kwargs)
    fName = os.path.join(tempfile.mkdtemp(), "scenario.json")
    with open(fName, "w") as f:
        json.dump(d, f)
    return fName


def _read(fName):
    with open(fName, "rb") as f:
        return f.read()


def test_gen_city():
    out = tempfile.mkdtemp()
    f1, f2 = os.path.join(out, "a.geojson"), os.path.join(out, "b.geojson")
    assert main(["gen-city", "--rows", "3", "--cols", "4", "--seed", "2", "--out", f1]) == EXIT_OK
    assert main(["gen-city", "--rows", "3", "--cols", "4", "--seed", "2", "--out", f2]) == EXIT_OK
    assert _read(f1) == _read(f2)
    assert main(["gen-city", "--rows", "1", "--out", os.path.join(out, "c.geojson")]) == EXIT_CONFIG


def test_bad_arguments():
    assert main([]) == EXIT_CONFIG
    assert main(["nonsense"]) == EXIT_CONFIG
    assert main(["run", os.path.join(tempfile.mkdtemp(), "missing.json")]) == EXIT_CONFIG
    assert main(["run", _scenario_file(workplace_mode="three")]) == EXIT_CONFIG
    assert main(["sweep"]) == EXIT_CONFIG
    assert main(["sweep", "--preset", "nonsense"]) == EXIT_CONFIG
    assert main(["report", tempfile.mkdtemp()]) == EXIT_CONFIG
    assert main(["validate", os.path.join(tempfile.mkdtemp(), "missing")]) == EXIT_CONFIG


def test_print_config(capsys):
    assert main(["run", _scenario_file(), "--print-config", "--seed", "5"]) == EXIT_OK
    printed = json.loads(capsys.readouterr().out)
    assert printed["seed"] == 5
    assert printed["fleet_size"] == 1


def test_run_report_validate():
    out = os.path.join(tempfile.mkdtemp(), "run")
    assert main(["run", _scenario_file(), "--out", out, "--trace"]) == EXIT_OK
    for name in ("report.json", "report.csv", "series.csv", "ledger.csv", "charges.csv", "events.jsonl"):
        assert os.path.exists(os.path.join(out, name)), name
    with open(os.path.join(out, "report.json")) as f:
        assert json.load(f)["users_total"] == 2

    before = _read(os.path.join(out, "report.csv"))
    assert main(["report", out]) == EXIT_OK
    assert _read(os.path.join(out, "report.csv")) == before

    assert main(["validate", out]) == EXIT_OK

    with open(os.path.join(out, "charges.csv"), "a") as f:
        f.write("0,99,1.000000,1/1\n")
    assert main(["validate", out]) == EXIT_VIOLATIONS


def test_validate_without_trace():
    out = os.path.join(tempfile.mkdtemp(), "run")
    assert main(["run", _scenario_file(), "--out", out]) == EXIT_OK
    assert main(["validate", out]) == EXIT_CONFIG


def test_sweep():
    out = tempfile.mkdtemp()
    fName = os.path.join(out, "sweep.json")
    with open(fName, "w") as f:
        json.dump({"base": SCENARIO, "parameter": "fleet_size", "values": [1, 2], "seeds": 1}, f)
    assert main(["sweep", fName, "--out", os.path.join(out, "suite")]) == EXIT_OK
    assert os.path.exists(os.path.join(out, "suite", "summary.csv"))
    assert main(["sweep", fName, "--jobs", "0"]) == EXIT_CONFIG
