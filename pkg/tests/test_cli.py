import json
import subprocess
import sys

import pytest

from starsym.cli import main
from starsym.serialize import from_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_star_examples(capsys):
    assert run(capsys, "star", "--target", "w", "u1", "x1")[1].splitlines()[0] == "x1*u1 + h"
    assert run(capsys, "star", "--target", "w", "x1", "u1")[1].splitlines()[0] == "x1*u1"
    code, out, _ = run(capsys, "star", "--target", "sw", "u1*sinv", "x1*sinv")
    assert code == 0 and out.splitlines()[0] == "x1*u1*sinv + h*sinv"


def test_star_json_round_trips(capsys):
    code, out, _ = run(capsys, "--format", "json", "star", "--target", "tw", "t*h^-1*u1", "x1")
    assert code == 0
    data = json.loads(out)
    F = from_json(data["result"])
    assert F.cells()[(1, 1)] is not None and data["result"]["window"] == [None] * 7


def test_starexp(capsys):
    code, out, _ = run(capsys, "--format", "json", "starexp", "theta*x1*u1", "--D", "2")
    data = json.loads(out)
    assert code == 0 and data["agreement"] is True and set(data["routes"]) == {
        "series", "ode", "resolvent"}
    code, out, _ = run(capsys, "starexp", "0", "--D", "5")
    assert code == 0 and out.splitlines()[0] == "1"


def test_starexp_order_violation(capsys):
    code, _, err = run(capsys, "starexp", "h^-1*x1")
    assert code == 3 and "order" in err


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "star", "x1/u1", "x1")
    assert code == 2 and "line 1, column 3" in err


def test_index_and_precondition_exit_codes(capsys):
    # x2 does not exist when n = 1; rejected while lowering
    code, _, err = run(capsys, "--n", "1", "star", "x2", "x1")
    assert code == 2 and "x2" in err
    code, _, err = run(capsys, "star", "--D", "-1", "x1", "x1")
    assert code == 3


def test_oscillator(capsys):
    code, out, _ = run(capsys, "--format", "json", "oscillator", "--D", "6")
    data = json.loads(out)
    assert code == 0 and all(data["verdicts"].values())
    code, out, _ = run(capsys, "oscillator", "--theta", "0", "--D", "4")
    assert code == 0 and out.splitlines()[0] == "starexp: 1"


def test_laplace_command(capsys):
    code, out, _ = run(capsys, "laplace", "x1*sinv^3", "--D", "4")
    assert code == 0 and out.splitlines()[0] == "1/2*h^-2*t^2*x1"
    code, out, _ = run(capsys, "laplace", "--inverse", "1/2*h^-2*t^2*x1", "--D", "4")
    assert code == 0 and out.splitlines()[0] == "x1*sinv^3"
    # the declared order is inferred, so lowering never produces a violator
    code, out, _ = run(capsys, "laplace", "--inverse", "h^-1*x1", "--D", "4")
    assert code == 0 and out.splitlines()[0] == "h^-1*x1*sinv"


@pytest.mark.parametrize("suite", ["laws", "laplace"])
def test_check_suites_pass_and_are_deterministic(capsys, suite):
    code, first, _ = run(capsys, "--format", "json", "check", suite, "--seed", "7", "--cases", "10")
    assert code == 0 and json.loads(first)["passed"]
    _, second, _ = run(capsys, "--format", "json", "check", suite, "--seed", "7", "--cases", "10")
    assert first == second


def test_check_gevrey_demo(capsys):
    code, out, _ = run(capsys, "check", "gevrey", "--demo", "formal-counterexample",
                       "--cases", "5")
    assert code == 0 and "divergent" in out


def test_config_file(tmp_path, capsys):
    cfg = tmp_path / "job.json"
    cfg.write_text(json.dumps({"format": "json", "D": 1}))
    code, out, _ = run(capsys, "--config", str(cfg), "starexp", "theta*x1*u1")
    assert code == 0 and json.loads(out)["D"] == 1
    # flags override the file
    code, out, _ = run(capsys, "--config", str(cfg), "starexp", "theta*x1*u1", "--D", "3")
    assert json.loads(out)["D"] == 3


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "starsym", "star", "u1", "x1"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.startswith("x1*u1 + h")
