import io
import json

import jsonschema
import pytest

from hilbcoeff.cli import run
from hilbcoeff.report import load_schema
from conftest import RINGS

POLY2 = str(RINGS / "poly2.ring")
QUADRIC = str(RINGS / "quadric.ring")
SCHEMA = load_schema()


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def call_json(*argv):
    code, out, _ = call(*argv, "--json")
    doc = json.loads(out)
    jsonschema.validate(doc, SCHEMA)
    assert doc["diagnostics"]["exit_code"] == code
    return code, doc


def test_coeffs_json():
    code, doc = call_json("coeffs", "--ring", POLY2, "--q", "m", "--module", "R")
    assert code == 0
    assert doc["results"]["e"]["values"] == [1, 0, 0]


def test_coeffs_with_k():
    code, doc = call_json("coeffs", "--ring", POLY2, "--q", "m", "--k", "m")
    assert doc["results"]["g"]["values"] == [1, -1, 1]
    assert doc["results"]["f"]["values"] == [1, 0]


def test_identities_text():
    code, out, _ = call("identities", "--ring", POLY2, "--k", "m", "--q", "m")
    assert code == 0
    assert "FAIL" not in out and out.count("PASS") >= 7


def test_semigroup_delta():
    code, doc = call_json("semigroup", "delta", "--gens", "3,4,5", "--k", "m")
    assert code == 0
    assert doc["results"]["delta_k"] == [-1]
    assert doc["results"]["checks"]["sup_delta_k"] is True


def test_semigroup_commands():
    assert call_json("semigroup", "info", "--gens", "3,4,5")[1]["results"]["gaps"] == [1, 2]
    assert call_json("semigroup", "oversemigroups", "--gens", "3,4,5")[1]["results"]["count"] == 3
    e1 = call_json("semigroup", "e1", "--gens", "3,4,5", "--q", "m", "--k", "R")[1]["results"]
    assert e1["e1_blowup"] == 2 and e1["agree"]
    assert call_json("semigroup", "identities", "--gens", "3,4,5")[1]["results"]["ok"]


def test_length_and_i_invariant():
    assert call_json("length", "--ring", QUADRIC, "--q", "x+z, y+w")[1]["results"]["length"] == 3
    assert call_json("length", "--ring", QUADRIC, "--q", "x, y")[1]["results"]["length"] == "infinite"
    assert call_json("i-invariant", "--ring", QUADRIC)[1]["results"]["value"] == 1


def test_scaling_commands():
    code, doc = call_json("scaling", "--ring", POLY2, "--q", "m", "--kmax", "3")
    assert doc["results"]["ok"]
    code, doc = call_json("scaling", "--gens", "3,4,5", "--kmax", "4")
    assert [r["e1"] for r in doc["results"]["rows"]] == [2, 2, 2, 2]


def test_explore_is_deterministic():
    argv = ("explore", "lambda", "--ring", QUADRIC, "--target", "e", "--samples", "3", "--seed", "17")
    a, b = call_json(*argv)[1], call_json(*argv)[1]
    assert a["results"] == b["results"]
    assert a["results"]["report"]["observed"] == [-1]


def test_explore_bounds_and_probe():
    doc = call_json("explore", "bounds", "--ring", QUADRIC, "--samples", "3", "--lh", "1", "--im", "1")[1]
    res = doc["results"]
    assert not res["g1_bounds"]["violations"] and not res["e1_bound"]["violations"]
    assert not res["envelope"]["violations"]
    doc = call_json("explore", "probe", "--ring", QUADRIC, "--samples", "3")[1]
    assert doc["results"]["report"]["extra"]["I_R_constant"]


def test_json_round_trip():
    _, out, _ = call("coeffs", "--ring", POLY2, "--q", "m", "--json")
    doc = json.loads(out)
    assert json.loads(json.dumps(doc)) == doc


@pytest.mark.parametrize("argv,status", [
    (("length", "--ring", "/nonexistent.ring", "--q", "m"), 1),
    (("bogus",), 1),
    (("length", "--ring", POLY2, "--q", "x + q"), 1),
    (("semigroup", "info", "--gens", "4,6"), 1),
    (("coeffs", "--ring", POLY2, "--q", "m", "--nmax", "5"), 2),
    (("semigroup", "oversemigroups", "--gens", "7,9,11", "--cap", "3"), 2),
])
def test_error_exit_codes(argv, status):
    code, doc = call_json(*argv)
    assert code == status
    assert doc["diagnostics"]["error"]["type"]


def test_parse_error_position_reported(tmp_path):
    bad = tmp_path / "bad.ring"
    bad.write_text("vars x, y;\nrel x*q;\n")
    code, doc = call_json("length", "--ring", str(bad), "--q", "m")
    assert code == 1
    assert doc["diagnostics"]["error"]["line"] == 2


def test_budget_flag(tmp_path):
    ring = tmp_path / "xyz.ring"
    ring.write_text("vars x, y, z;\n")
    q = "x^2*y - z^3 + x, y^2*z - x^3 + y, z^2*x - y^3 + z"
    code, doc = call_json("length", "--ring", str(ring), "--q", q, "--budget", "5")
    assert code == 2 and doc["diagnostics"]["error"]["type"] == "ResourceError"
    assert call_json("length", "--ring", str(ring), "--q", q)[0] == 0


def test_identity_violation_exit_code(monkeypatch):
    from hilbcoeff import hilbert
    real = hilbert.fiber_value
    monkeypatch.setattr(hilbert, "fiber_value", lambda k, q, n: real(k, q, n) + (n == 4))
    code, doc = call_json("identities", "--ring", POLY2, "--k", "m", "--q", "m")
    assert code == 3
    assert doc["diagnostics"]["status"] == "identity-violation"


def test_char_precedence(tmp_path, monkeypatch):
    plain = tmp_path / "plain.ring"
    plain.write_text("vars x, y;\n")
    monkeypatch.setenv("HILB_CHAR", "7")
    assert call_json("length", "--ring", str(plain), "--q", "m")[1]["inputs"]["characteristic"] == 7
    assert call_json("length", "--ring", POLY2, "--q", "m")[1]["inputs"]["characteristic"] == 32003
    assert call_json("length", "--ring", POLY2, "--q", "m", "--char", "5")[1]["inputs"]["characteristic"] == 5
    monkeypatch.setenv("HILB_CHAR", "8")
    assert call_json("length", "--ring", str(plain), "--q", "m")[1]["diagnostics"]["exit_code"] == 1


def test_text_output_is_not_json():
    code, out, _ = call("semigroup", "info", "--gens", "3,4,5")
    assert code == 0 and out.startswith("# semigroup info")
