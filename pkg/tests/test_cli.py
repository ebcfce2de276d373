import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from oapoly.cli import main
from oapoly.serialize import loads

FIXTURES = Path(__file__).parent / "fixtures"


def run(capsys, *argv, stdin=None, monkeypatch=None):
    if stdin is not None:
        monkeypatch.setattr(sys, "stdin", io.StringIO(stdin))
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_expand_latex(capsys):
    code, out, _ = run(capsys, "expand", "--in", str(FIXTURES / "k2_example.json"), "--format", "latex")
    assert code == 0 and out == "2x_1^{2}+2x_2^{2}\n"


def test_expand_empty_terms_from_stdin(capsys, monkeypatch):
    doc = '{"kind": "powers_form", "m": 3, "d": 2, "terms": []}'
    code, out, _ = run(capsys, "expand", "--in", "-", "--format", "latex", stdin=doc, monkeypatch=monkeypatch)
    assert code == 0 and out == "0\n"


def test_expand_even_instance_json(capsys):
    code, out, _ = run(capsys, "expand", "--in", str(FIXTURES / "even_n2.json"))
    assert code == 0
    assert json.loads(out) == {
        "kind": "monomial_poly",
        "m": 4,
        "d": 2,
        "monomials": [{"exponents": [4, 0], "coeff": "1"}, {"exponents": [0, 4], "coeff": "-1/4"}],
    }


def test_expand_bad_input_exit_2(capsys, monkeypatch):
    doc = '{"kind": "powers_form", "m": 2, "d": 2, "terms": [{"lambda": "0.5", "phi": ["1", "1"]}]}'
    code, out, err = run(capsys, "expand", "--in", "-", stdin=doc, monkeypatch=monkeypatch)
    assert code == 2 and out == ""
    assert "$.terms[0].lambda" in err


def test_expand_missing_file_exit_2(capsys):
    code, _, err = run(capsys, "expand", "--in", "/nonexistent/form.json")
    assert code == 2 and "cannot read" in err


def test_check_oa(capsys):
    code, out, _ = run(capsys, "check-oa", "--in", str(FIXTURES / "k2_example.json"))
    assert code == 0 and json.loads(out)["orthogonally_additive"] is True
    code, out, _ = run(capsys, "check-oa", "--in", str(FIXTURES / "x1x2.json"))
    verdict = json.loads(out)
    assert code == 1
    assert verdict["witness"] == {"exponents": [1, 1], "coeff": "1"}
    assert verdict["disjoint_witness"] == {"x": ["1", "0"], "y": ["0", "1"]}


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--functional", "0,3")
    assert code == 0 and json.loads(out)["homomorphism"] is True
    code, out, _ = run(capsys, "classify", "--functional", "1,1")
    assert code == 1 and json.loads(out) == {"homomorphism": False, "negation": False, "witness": "1,-1"}
    code, out, _ = run(capsys, "classify", "--functional=-2,0")
    assert code == 0 and json.loads(out) == {"homomorphism": False, "negation": True, "witness": None}
    code, _, err = run(capsys, "classify", "--functional", "1,abc")
    assert code == 2 and "--functional[1]" in err


def test_gen_sharp(capsys):
    code, out, _ = run(capsys, "gen-sharp", "--degree", "4")
    doc = json.loads(out)
    assert code == 0 and doc["A"] == ["-1/6", "1/24"] and doc["B2"] == "-1/4"
    code, out, _ = run(capsys, "gen-sharp", "--degree", "3", "--verify")
    doc = json.loads(out)
    assert code == 0 and doc["verification"]["passed"]
    assert [(t["lambda"], t["phi"]) for t in doc["form"]["terms"]] == [
        ("-1/3", ["1", "1"]),
        ("1/8", ["2", "1"]),
        ("1/24", ["2", "-1"]),
    ]
    assert loads(json.dumps(doc["form"])) is not None
    code, out, _ = run(capsys, "gen-sharp", "--degree", "2")
    doc = json.loads(out)
    assert doc["A"] == ["1/2"]
    assert doc["expanded"]["monomials"] == [{"exponents": [2, 0], "coeff": "1"}, {"exponents": [0, 2], "coeff": "1"}]


@pytest.mark.parametrize("degree", ["1", "0", "-3"])
def test_gen_sharp_bad_degree(capsys, degree):
    code, _, _ = run(capsys, "gen-sharp", "--degree", degree)
    assert code == 2


def test_verify_theorem_small(capsys):
    code, out, _ = run(capsys, "verify-theorem", "--trials", "30", "--seed", "42", "--samples", "40")
    doc = json.loads(out)
    assert code == 0 and doc["passed"]
    assert [r["campaign"] for r in doc["reports"]] == ["theorem", "deriv", "agreement"]


def test_verify_theorem_equal_m(capsys):
    code, out, _ = run(capsys, "verify-theorem", "--trials", "20", "--k-policy", "equal_m", "--samples", "20")
    doc = json.loads(out)
    assert code == 0
    assert len(doc["reports"][0]["sharpness_confirmations"]) >= 1


def test_verify_theorem_zero_trials(capsys):
    code, _, err = run(capsys, "verify-theorem", "--trials", "0")
    assert code == 2 and "trials" in err


def test_bad_flag_exit_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["verify-theorem", "--k-policy", "sometimes"])
    assert exc.value.code == 2


def test_module_entry_point_is_byte_identical():
    argv = [sys.executable, "-m", "oapoly", "verify-theorem", "--trials", "10", "--seed", "7", "--samples", "20"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and json.loads(first)["passed"]
