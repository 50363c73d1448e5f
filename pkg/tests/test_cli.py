import json
import subprocess
import sys

import pytest

from wittorbit.cli import main
from wittorbit.parser import element_from_json, parse_element, vector_from_json


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def test_bracket_example(capsys):
    assert run(capsys, "bracket", "(t^2) d", "(t^3) d", "--algebra", "W") == (0, "(t^4) d", "")


def test_verify_jacobi_example(capsys):
    code, out, _ = run(capsys, "verify", "jacobi", "--trials", "200", "--seed", "7")
    assert code == 0 and "PASS" in out


def test_orbit_equal_example(capsys):
    assert run(capsys, "orbit", "equal", "--n", "3", "0,0,1", "0,0,2")[:2] == (0, "true")


def test_domain_error_exit_code(capsys):
    code, _, err = run(capsys, "orbit", "equal", "1,1", "1,1,1")
    assert code == 1 and err.startswith("SizeMismatch")
    code, _, err = run(capsys, "module", "reduce", "1:3,1/2")
    assert code == 1 and err.startswith("TwistObstruction")


def test_usage_error_exit_code(capsys):
    code, _, err = run(capsys, "bracket", "e[0]", "--algebra", "W")
    assert code == 2 and "usage" in err
    assert run(capsys, "frobnicate")[0] == 2
    code, _, err = run(capsys, "orbit", "equal", "0,1")
    assert code == 2 and "usage: wittorbit orbit" in err


def test_normal_form_json_round_trip(capsys):
    code, out, _ = run(capsys, "normal-form", "e[1]*e[0]", "--algebra", "W", "--json")
    assert code == 0
    assert element_from_json(json.loads(out)) == parse_element("e[0]*e[1] - e[1]", "W")


def test_psi_json_round_trip(capsys):
    code, out, _ = run(capsys, "psi", "e[1]", "--n", "2", "--json")
    data = json.loads(out)
    assert element_from_json(data) == parse_element("v(0,1) + 2*t*v(0,0) + t^2*d", data["algebra"])


def test_module_act_json(capsys):
    code, out, _ = run(capsys, "module", "act", "1:0,0,1", "e[-1]", "--json")
    assert code == 0 and vector_from_json(json.loads(out)) == {((1, 0),): 1}
    code, out, _ = run(capsys, "module", "reduce", "1:0,0,1", "--json")
    assert json.loads(out)["c"] == "1/1"


def test_small_queries(capsys):
    assert run(capsys, "ann", "test", "1:0,0,1", "e[-1]")[1] == "false"
    assert json.loads(run(capsys, "group", "matrix", "3,5", "--json")[1]) == [["1", "0"], ["-5/3", "3"]]
    assert json.loads(run(capsys, "localfn", "project", "2:5,0,3", "--json")[1]) == [["0", "6"]]
    assert json.loads(run(capsys, "orbit", "reduce", "5,3", "--json")[1])["normal_form"] == ["0", "3"]


@pytest.mark.parametrize("argv", [["--help"], ["bracket", "--help"]])
def test_console_entry_point(argv):
    proc = subprocess.run([sys.executable, "-m", "wittorbit", *argv], capture_output=True, text=True)
    assert proc.returncode == 0 and "usage" in proc.stdout
