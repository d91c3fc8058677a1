import json

import pytest

from padicdiff.cli import main, run


def doc(argv):
    out, code = run(argv)
    return out, code


def test_invalid_prime_exits_2():
    out, code = doc(["mahler", "eval", "--coeffs", "1", "--p", "4"])
    assert code == 2 and out["status"] == "domain-error"
    assert main(["mahler", "eval", "--coeffs", "1", "--p", "4", "--json"]) == 2


def test_precision_error_exits_3():
    out, code = doc(["flow", "exp", "--field", "0,0,1"])
    assert code == 3 and out["status"] == "precision-error"


def test_header_records_config_and_seed():
    out, code = doc(["group", "dist", "--f", "translate:9", "--seed", "7"])
    assert code == 0
    assert out["config"]["seed"] == 7 and out["config"]["p"] == 3
    assert out["result"]["distance"] == 2


def test_output_is_deterministic(capsys):
    argv = ["demo", "tower", "--count", "2", "--seed", "3", "--level", "3", "--json"]
    main(argv)
    first = capsys.readouterr().out
    main(argv)
    assert capsys.readouterr().out == first
    assert json.loads(first)["result"]["failures"] == []


@pytest.mark.parametrize("argv", [
    ["mahler", "extract", "--values", "0,1,4,9"],
    ["mahler", "analytic", "--coeffs", "1,3,9"],
    ["mahler", "norm", "--coeffs", "0,0,1", "--t", "1", "--level", "3"],
    ["group", "compose", "--f", "poly:0,0,9", "--g", "translate:9", "--level", "2"],
    ["group", "invert", "--f", "swap:0,1", "--level", "2"],
    ["group", "check-w", "--f", "bump:1,9", "--level", "2"],
    ["flow", "monomial", "--m", "2", "--q", "3", "--terms", "8"],
    ["flow", "log", "--f", "translate:9", "--level", "2"],
    ["profinite", "truncate", "--f", "translate:9", "--l", "3"],
    ["profinite", "closure", "--l", "2"],
    ["symp", "kernel", "--n", "2", "--degree", "2"],
    ["symp", "check", "--matrix", "1,1;0,1"],
    ["reps", "table", "--group", "d4"],
    ["reps", "regular", "--group", "q8"],
    ["reps", "induce", "--group", "s3", "--K", "1,2,0", "--chi", "1"],
])
def test_subcommands_succeed(argv):
    out, code = doc(argv)
    assert code == 0 and out["status"] == "ok", out


def test_demo_mackey_certificate():
    out, code = doc(["demo", "mackey", "--group", "s3", "--certificate"])
    assert code == 0 and out["result"]["all_hold"]
    assert all("certificate" in row for row in out["result"]["cases"])


def test_demo_exp_log():
    out, code = doc(["demo", "exp-log", "--count", "2"])
    res = out["result"]
    assert code == 0 and res["all_bounds_hold"]
    assert res["min_field_agreement"] >= 16 - 4


def test_reps_mackey_cli():
    out, code = doc(["reps", "mackey", "--group", "s3", "--K", "1,2,0", "--N", "1,0,2",
                     "--certificate"])
    assert code == 0 and out["result"]["holds"] and out["result"]["certificate"]


def test_demo_symplectic():
    out, code = doc(["demo", "symplectic"])
    r = out["result"]
    assert r["2"]["kernel_dimensions"] == {"1": 3, "2": 3, "3": 3}
    assert r["4"]["kernel_dimensions"] == {"1": 10, "2": 10}
