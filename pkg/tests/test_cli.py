import json

import jsonschema
import pytest

from symfields.cli import main
from symfields.report import schema


def run(capsys, *argv):
    rc = main(list(argv))
    out, err = capsys.readouterr()
    return rc, out, err


def test_eval(capsys):
    rc, out, _ = run(capsys, "eval", "(u-v)/(v-w)", "u=5,v=3,w=2")
    assert (rc, out.strip()) == (0, "2")


def test_eval_pole(capsys):
    rc, _, err = run(capsys, "eval", "(u-v)/(v-w)", "u=5,v=3,w=3")
    assert rc == 1 and "pole at assignment" in err


@pytest.mark.parametrize("argv", [
    ["eval", "(u-v", "u=1,v=2"],
    ["eval", "u+v", "u=1"],
    ["eval", "u", "u=1,z=2"],
    ["parse", "1 +* x"],
    ["verify-suite", "--suite", "nope"],
    ["no-such-verb"],
    ["ec", "invariants"],
])
def test_usage_errors(capsys, argv):
    assert run(capsys, *argv)[0] == 2


def test_parse_over_finite_field(capsys):
    rc, out, _ = run(capsys, "--field", "F5", "parse", "6*x + 10")
    assert (rc, out.strip()) == (0, "x")
    rc, out, _ = run(capsys, "parse", "x/2 + 1/2", "--json")
    assert rc == 0 and json.loads(out)["canonical"] == "(1/2)*x + (1/2)"


def test_verify_suite_json(capsys):
    rc, out, _ = run(capsys, "verify-suite", "--suite", "invariant-fields", "--json")
    data = json.loads(out)
    jsonschema.validate(data, schema())
    assert rc == 0 and data["suite"] == "invariant-fields" and data["summary"]["fail"] == 0


def test_verify_suite_table(capsys):
    rc, out, _ = run(capsys, "verify-suite", "--suite", "alg-sub-kpsi")
    assert rc == 0 and out.splitlines()[-1].startswith("alg-sub-kpsi:")


def test_ec_invariants(capsys):
    rc, out, _ = run(capsys, "ec", "invariants", "--a", "0,0,0,-1,0", "--json")
    data = json.loads(out)
    assert rc == 0 and data["j"] == "1728" and data["delta"] == "64"
    assert data["twist"] == {"n": 4, "gamma": "-1"}


def test_ec_singular(capsys):
    rc, out, _ = run(capsys, "ec", "invariants", "--a", "0,0,0,0,0", "--json")
    assert rc == 0 and json.loads(out)["j"] is None


def test_ec_isomorphic(capsys):
    rc, out, _ = run(capsys, "--field", "F5", "ec", "isomorphic", "--w1", "0,0,0,1,0", "--w2", "0,0,0,2,0")
    assert rc == 0 and "isomorphic: no" in out
    rc, out, _ = run(capsys, "--field", "F7", "ec", "isomorphic", "--w1", "0,0,0,1,0", "--w2", "0,0,0,4,0", "--json")
    assert rc == 0 and json.loads(out)["isomorphic"] is True


def test_ec_beta(capsys):
    rc, out, _ = run(capsys, "ec", "beta", "--field", "F3^2", "--q", "3", "--a", "1", "--json")
    data = json.loads(out)
    assert rc == 0 and data["cokernel_size"] == 3 == data["cokernel_size_enumerated"]
    assert run(capsys, "ec", "beta", "--q", "3", "--a", "1")[0] == 2


def test_lie(capsys):
    rc, out, _ = run(capsys, "lie", "bracket", "X", "X^2")
    assert rc == 0 and "X^2" in out
    rc, out, _ = run(capsys, "lie", "closed", "1", "X", "X^2")
    assert rc == 0 and "closed: yes" in out
    rc, out, _ = run(capsys, "lie", "normal-form", "(X+1)^2", "X*(X+1)", "X^2")
    assert rc == 0 and out.strip() == "R = X/(X + 1)"
    assert run(capsys, "lie", "normal-form", "1", "X", "X^3")[0] == 1


def test_divdiff(capsys):
    assert run(capsys, "divdiff", "--n", "2", "--symbolic")[0] == 0
    assert run(capsys, "divdiff", "--n", "3", "--seed", "7")[0] == 0


def test_wp_sub(capsys):
    rc, out, _ = run(capsys, "--field", "F13", "wp", "sub", "--curve", "4,0", "--p1", "0,0", "--p2", "6,2", "--json")
    data = json.loads(out)
    assert rc == 0 and data["g"] == "11" and data["agrees_with_chord_law"]
    rc, _, err = run(capsys, "--field", "F13", "wp", "sub", "--curve", "1,0", "--p1", "0,0", "--p2", "6,2")
    assert rc == 1 and "not on" in err


def test_alpha_verify(capsys):
    rc, out, _ = run(capsys, "alpha", "verify", "--p", "2", "--n", "1", "--lambda", "X^2", "--json")
    assert rc == 0 and json.loads(out)["summary"]["pass"] == 5
    rc, _, _ = run(capsys, "alpha", "verify", "--p", "2", "--n", "1", "--lambda", "X")
    assert rc == 1
