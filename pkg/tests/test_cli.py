import io
import json
import subprocess
import sys

import pytest

from freenov.cli import run


def call(*argv, env=None, monkeypatch=None):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    text = out.getvalue()
    return code, (json.loads(text) if text and text.startswith("{") else text), err.getvalue()


def test_dim_multilinear():
    code, obj, _ = call("dim", "--multilinear", "--n", "3")
    assert code == 0
    assert obj == {"n": 3, "dimension": 6, "schema": 1}


def test_dim_multidegree():
    _, obj, _ = call("dim", "--multidegree", "2,1")
    assert obj["dimension"] == 4


def test_basis_lists_words():
    _, obj, _ = call("basis", "--multidegree", "1,1")
    assert obj["dimension"] == 2
    assert [t["rows"] for t in obj["tableaux"]] == [[[1, 2]], [[2, 1]]]
    assert obj["tableaux"][0]["word"] == "(x1*x2)"


def test_lemma1():
    _, obj, _ = call("lemma1", "--tableau", '{"rows":[[1,2,3]]}')
    assert obj["f"] == "l1^2+l1*l2-l1"
    assert obj["g"] == "l1+l2+l3-2"


def test_reconstruct():
    _, obj, _ = call("reconstruct", "--f", "l1^2+l1*l2-l1", "--g", "l1+l2+l3-2")
    assert obj["tableau"]["rows"] == [[1, 2, 3]]
    assert obj["word"] == "((x1*x2)*x3)"


def test_reconstruct_error_exit_code():
    code, obj, _ = call("reconstruct", "--f", "l1+l2", "--g", "l1+l2-1")
    assert code == 2
    assert obj["error"]["type"] == "not-a-tableau"


def test_identity_true():
    _, obj, _ = call("identity-check", "--expr", "(x1*(x2*x3)) - (x2*(x1*x3))", "--n", "3")
    assert obj == {"identity": True, "schema": 1}


def test_identity_false_gives_counterexample():
    _, obj, _ = call("identity-check", "--expr", "(x1*x2) - (x2*x1)", "--min-exponent", "2")
    assert obj["identity"] is False
    assert obj["counterexample"]["s"] == [2, 3]
    assert obj["counterexample"]["image"] == "-x^4"


def test_identity_check_non_multilinear():
    _, obj, _ = call("identity-check", "--expr", "((x1*x1)*x1) - (x1*(x1*x1))")
    assert obj["identity"] is False
    assert obj["counterexample"]["fresh_variables"] == {"x1": ["x1", "x2", "x3"]}


def test_expand_and_nf():
    _, obj, _ = call("expand", "--expr", "(x1*x2)")
    assert obj["element"] == [{"monomial": [[1, 1], [2, 0]], "coefficient": "1"}]
    _, obj, _ = call("nf", "--expr", "(x3*(x1*x2))")
    (comp,) = obj["components"]
    assert comp["terms"] == [
        {"tableau": {"rows": [[3, 2], [1]], "nose_included": True}, "word": "(x1*(x3*x2))", "coefficient": "1"}
    ]


def test_independence():
    _, obj, _ = call("independence", "--n", "3")
    assert (obj["rank"], obj["size"]) == (6, 6)


def test_eval():
    _, obj, _ = call("eval", "--expr", "(x1*x2) - (x2*x1)", "--s", "2,3")
    assert obj["image"] == "-x^4"
    _, obj, _ = call("eval", "--expr", "(x1*x2)")
    assert obj["lambda_image"] == [{"coefficient": "l1", "exponent": {"constant": -1, "lambda": [1, 1]}}]


def test_solve_ode():
    _, obj, _ = call("solve-ode", "--f", "t1 - t0", "--order", "5")
    assert obj["series"]["coefficients"] == ["1", "1", "1/2", "1/6", "1/24", "1/120"]
    assert obj["residual_zero"] is True
    _, obj, _ = call("solve-ode", "--f", "2*t1*t0 - 1", "--point", "0,1,1/2", "--order", "3")
    assert obj["series"]["coefficients"] == ["1", "1/2", "-1/8", "1/16"]


def test_solve_ode_obstruction():
    code, obj, _ = call("solve-ode", "--f", "t1^2 + 1")
    assert code == 2 and obj["error"]["type"] == "field-obstruction"


def test_witness():
    code, obj, _ = call("witness", "--f", "(x2*x2) - x1", "--g", "x1", "--order", "12")
    assert code == 0
    assert obj["branch"] == "general"
    assert obj["images"] == {"x1": "x^2"}
    assert obj["residual_order"] == 11
    assert obj["theta_g"] == "x^2"
    assert obj["theta_f"]["zero"] is True


def test_text_format():
    code, text, _ = call("dim", "--n", "2", "--format", "text")
    assert code == 0 and "dimension: 2" in text


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["dim"], ["lemma1"], ["dim", "--n", "x"]])
def test_usage_errors(argv):
    code, _, err = call(*argv)
    assert code == 1 and err


@pytest.mark.parametrize("argv, kind", [
    (["lemma1", "--tableau", "{bad"], "malformed-input"),
    (["lemma1", "--tableau", '{"rows":[[1,3,2]]}'], "invalid-tableau"),
    (["expand", "--expr", "((x1*"], "syntax-error"),
    (["eval", "--expr", "(x1*x2)", "--s", "1,a"], "malformed-input"),
])
def test_domain_errors(argv, kind):
    code, obj, _ = call(*argv)
    assert code == 2
    assert obj["error"]["type"] == kind


def test_max_degree_cap(monkeypatch):
    monkeypatch.setenv("NOVIKOV_MAX_DEGREE", "3")
    code, obj, _ = call("dim", "--n", "4")
    assert code == 2 and "NOVIKOV_MAX_DEGREE" in obj["error"]["message"]
    assert call("dim", "--n", "3")[0] == 0


def test_deterministic_output():
    a = call("witness", "--f", "(x2*x2) - x1", "--g", "x1", "--order", "6")
    b = call("witness", "--f", "(x2*x2) - x1", "--g", "x1", "--order", "6")
    assert a == b


def test_console_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "freenov", "dim", "--multilinear", "--n", "4"],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["dimension"] == 20
