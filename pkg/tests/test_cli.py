import json

import pytest
from click.testing import CliRunner

from peff.cli import main


def run(*args):
    r = CliRunner().invoke(main, list(args), catch_exceptions=False)
    return r.exit_code, r.stdout, r.stderr


def test_eval_value():
    code, out, _ = run("eval", r"(\x. x) 5")
    assert code == 0 and json.loads(out) == 5


def test_eval_fuel_exhausted_is_indeterminate():
    code, out, _ = run("--fuel", "5", "eval", r"(\x. x x) (\x. x x)")
    assert code == 3 and json.loads(out)["result"] == "fuel exhausted"


def test_syntax_error_exit_2():
    code, _, err = run("eval", r"(\x. ")
    assert code == 2
    doc = json.loads(err)
    assert doc["error"] == "TermSyntaxError" and doc["position"] == 4


def test_check_code():
    code, out, _ = run("universe", "check-code", "1")
    doc = json.loads(out)
    assert code == 0 and doc["set"] == "In" and doc["coherent"] == "In"


def test_check_code_not_a_set():
    code, out, _ = run("universe", "check-code", "9")
    assert code != 0


def test_check_arrow():
    code, out, _ = run("check-arrow", r"\x. succ x", "--dom", "N:8", "--cod", "N")
    assert code == 0 and json.loads(out)["total"] == "In"
    code, out, _ = run("check-arrow", r"\x. 7", "--dom", "{0,1}", "--cod", "{0,1}")
    assert code == 1 and json.loads(out)["total"] == "Out"


@pytest.mark.parametrize("relation", ["discrete", "parity", "top"])
def test_broken_witness_named(relation):
    code, out, _ = run("--nat-size", "8", "construct", "qobject", "--carrier", "N:8",
                       "--relation", relation, "--witness", r"sym=\z w. 99")
    doc = json.loads(out)
    assert code == 1 and doc["failing"] == ["sym"] and "object" not in doc


def test_construct_qobject_searches_witnesses():
    code, out, _ = run("--nat-size", "8", "construct", "qobject", "--carrier", "N:8", "--relation", "parity")
    doc = json.loads(out)
    assert code == 0 and set(doc["laws"].values()) == {"pass"}
    assert doc["object"]["type"] == "qobject"


def test_construct_product():
    code, out, _ = run("construct", "product", "{0,1}", "{2,3,5}")
    assert code == 0 and json.loads(out)["support_size"] == 6


def test_classify_counterexample():
    code, out, _ = run("classify", r"\x. ite (eq0 x 3) (\u. 4) (\u. 1) 0", "--object", "parity")
    doc = json.loads(out)
    assert code == 1 and doc["saturated"] is False and doc["counterexample"][0] == 3


def test_classify_saturated():
    code, out, _ = run("--nat-size", "8", "classify", r"\x. 4", "--object", "parity")
    assert code == 0 and json.loads(out)["roundtrip"] is True


def test_extract_choice():
    code, out, _ = run("extract-choice", "Eq(N, y, succ(x))",
                       "--witness", r"\g u. \x. pair (succ x) (pair (succ x) 0)", "--at", "3")
    assert code == 0 and json.loads(out)["values"] == {"3": 4}


def test_extract_choice_bad_witness():
    code, _, err = run("extract-choice", "Eq(N, y, succ(x))", "--witness", r"\g u. \x. pair x (pair x 0)")
    assert code == 1 and json.loads(err)["error"] == "PreconditionFailed"


def test_realize():
    code, out, _ = run("--nat-size", "8", "realize", "exists y:N. Eq(N, y, x)", "--context", "x:N")
    assert code == 0 and json.loads(out)["valid"] is True
    code, out, _ = run("--nat-size", "8", "realize", "exists y:N. Eq(N, y, x)", "--context", "x:N",
                       "--realizer", r"\g u. pair 99 0")
    assert code == 1 and json.loads(out)["valid"] is False


def test_verify_alias():
    code, out, _ = run("verify", "quotient.omega-roundtrip")
    doc = json.loads(out)
    assert code == 0 and doc["status"] == "pass" and doc["suite"] == "quotient.omega"


def test_verify_unknown():
    code, _, err = run("verify", "nope")
    assert code == 2 and json.loads(err)["error"] == "UnknownSuite"


def test_verify_deterministic_and_out(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert run("verify", "pca.laws", "--out", str(a))[0] == 0
    assert run("--out", str(b), "verify", "pca.laws")[0] == 0
    assert a.read_bytes() == b.read_bytes()
    assert "timing" not in json.loads(a.read_text())


def test_verify_timing_flag():
    code, out, _ = run("verify", "pca.laws", "--timing")
    assert code == 0 and "timing" in json.loads(out)


def test_bad_collection_is_usage_error():
    code, _, err = run("check-arrow", r"\x. x", "--dom", "{a,b}", "--cod", "N")
    assert code == 2 and json.loads(err)["error"] == "SchemaError"
