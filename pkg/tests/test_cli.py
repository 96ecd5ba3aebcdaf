import json
import subprocess
import sys
from math import comb

import pytest

from riordan_finite.cli import run, series_from_json
from riordan_finite.expr import parse_series
from riordan_finite.riordan import matrix_from_json
from riordan_finite.scalar import field

PSTAR = ["--g", "1/(1-x)", "--F", "-x/(1-x)"]


def call(capsys, *argv):
    code = run(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def call_json(capsys, *argv):
    code, out, err = call(capsys, "--json", *argv)
    assert code == 0, err
    return json.loads(out)


def test_matrix_pascal_rows(capsys):
    code, out, _ = call(capsys, "matrix", "--g", "1/(1-x)", "--F", "x/(1-x)", "--rows", "6")
    assert code == 0
    rows = [list(map(int, line.split())) for line in out.splitlines()]
    assert rows == [[comb(n, j) for j in range(n + 1)] for n in range(6)]


def test_matrix_json_round_trip(capsys):
    data = call_json(capsys, "-m", "6", "matrix", "--g", "1/(1-w*x)", "--F", "x + w*x^2", "--rows", "5")
    back = matrix_from_json(json.dumps(data), field(6))
    g = parse_series("1/(1-w*x)", field(6), 32)
    assert [row[0] for row in back] == g.coeffs[:5]
    assert back[4][4] == 1


def test_order_involution(capsys):
    code, out, _ = call(capsys, "order", *PSTAR)
    assert code == 0
    assert out.strip() == "order 2 (verified to precision 32) = lcm(1, 2)"
    data = call_json(capsys, "-N", "12", "order", *PSTAR)
    assert data == {"order": 2, "verified_to": 12, "lcm_witness": {"g0_order": 1, "F_order": 2}}


def test_order_infinite_and_series_only(capsys):
    data = call_json(capsys, "order", "--g", "1/(1-x)", "--F", "x/(1-x)")
    assert data["order"] == "infinite"
    data = call_json(capsys, "-m", "6", "order", "--F", "w*x")
    assert data["order"] == 6


def test_identity_central_binomial(capsys):
    data = call_json(capsys, "identity", *PSTAR, "--k", "0", "--n", "7")
    assert data["lhs"] == data["rhs"] == "429/2048"
    assert data["equal"] is True
    assert {"n", "lhs", "rhs", "equal", "pair", "spec"} <= set(data)
    code, out, _ = call(capsys, "identity", *PSTAR, "--k", "0", "--n", "7")
    assert "429/2048 = lambda*v[7] = 429/2048" in out


def test_identity_range(capsys):
    code, out, _ = call(capsys, "-N", "12", "identity", *PSTAR, "--n", "0", "--upto", "12")
    assert code == 0
    assert out.count("row ") == 13 and "!=" not in out


def test_complete_and_eigen(capsys):
    data = call_json(capsys, "-N", "7", "complete", "--omega", "-1", "--set", "2=1")
    F = series_from_json(data["F"])
    assert F == parse_series("-x + x^2 - x^3 + 2*x^5 - 13*x^7", field(1), 7)
    code, out, _ = call(capsys, "-N", "5", "eigen", *PSTAR, "--k", "1")
    assert "lambda = -1" in out and "True" in out


def test_conjugate(capsys):
    code, out, _ = call(capsys, "-m", "6", "-N", "10", "conjugate", "--g", "w^2", "--F", "-x",
                        "--against-g", "w^2*(1+x)^2", "--against-F", "-x/(1+x)")
    assert code == 0
    assert "normal form = (w - 1, -x)" in out
    assert "conjugate to other pair: True" in out


def test_marshall_and_cyclic(capsys):
    data = call_json(capsys, "-N", "6", "marshall", "--g", "1/(1-x)")
    assert series_from_json(data["F"]) == parse_series("-x/(1-x)", field(1), 6)
    code, out, _ = call(capsys, "-N", "10", "cyclic-check", *PSTAR)
    assert code == 0
    assert "10/10" in out and "False" not in out


def test_eval_json_round_trip(capsys):
    for m, text in ((1, "1/(1-x)"), (6, "w^3"), (5, "sqrt(1 + w*x) - x^3/7")):
        data = call_json(capsys, "-N", "9", "-m", str(m), "eval", text)
        assert series_from_json(data["series"]) == parse_series(text, field(m), 9)


def test_eval_negative_expression_and_flag_positions(capsys):
    code, out, _ = call(capsys, "eval", "-x/(1+x)", "-N", "4")
    assert out.strip() == "-x + x^2 - x^3 + x^4"
    code, out, _ = call(capsys, "-N", "3", "-m", "4", "eval", "(1+w*x)^2")
    assert out.strip() == "1 + 2*w*x - x^2"


def test_errors_exit_nonzero(capsys):
    code, _, err = call(capsys, "eval", "log(x)")
    assert code == 1 and "offset 0" in err
    code, _, err = call(capsys, "eval", "1 +")
    assert code == 1 and "offset 3" in err
    code, _, err = call(capsys, "order", "--g", "1", "--F", "x^2")
    assert code == 1
    code, _, err = call(capsys, "-N", "0", "eval", "x")
    assert code == 2


def test_module_entry_point():
    res = subprocess.run([sys.executable, "-m", "riordan_finite", "-N", "3", "eval", "1/(1-2*x)"],
                         capture_output=True, text=True)
    assert res.returncode == 0
    assert res.stdout.strip() == "1 + 2*x + 4*x^2 + 8*x^3"
