import json

import pytest
import yaml

from core import config
from scripts.divlie import infer_n, main
from scripts.validate_yaml import main as validate_main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err


@pytest.fixture
def tri_auto(tmp_path):
    doc = {
        "n": 2,
        "word": [{"kind": "tri", "i": 1, "f": {"n": 2, "terms": [{"exps": [0, 2], "coeff": "1"}]}}],
    }
    path = tmp_path / "sigma.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    return str(path)


def test_infer_n():
    assert infer_n(["x1*d2", "H3"], None) == 3
    assert infer_n(["1/2"], None) == 1
    assert infer_n(["x1"], 4) == 4


@pytest.mark.parametrize(
    "argv, expected",
    [
        (["bracket", "x1*d2", "x2*d1", "--n", "2"], "x1*d1 - x2*d2"),
        (["bracket", "d1", "x1^2*d2"], "2*x1*d2"),
        (["div", "H1", "--n", "2"], "1"),
        (["div", "x1*x2*d1 + x2^2*d2"], "3*x2"),
        (["classify", "x2*d1"], "zero"),
        (["classify", "H1 + H2"], "constant 2"),
        (["classify", "x1^2*d1"], "nonconstant 2*x1"),
        (["apply", "x2*d1", "x1^2"], "2*x1*x2"),
        (["weights", "x1^2*d1 + x2*d1"], "[0, 2]: x2*d1\n[1, 0]: x1^2*d1"),
    ],
)
def test_text_commands(capsys, argv, expected):
    code, out, _ = run(capsys, *argv)
    assert code == 0
    assert out == expected


def test_basis_command(capsys):
    code, out, _ = run(capsys, "basis", "--n", "2", "--cutoff", "2")
    assert code == 0
    assert out.splitlines()[0] == "dim 9"
    code, out, _ = run(capsys, "basis", "--n", "2", "--cutoff", "1", "--algebra", "divc", "--format", "json")
    doc = json.loads(out)
    assert doc["dim"] == 6 and doc["algebra"] == "divc"


def test_json_output_is_stable(capsys):
    _, first, _ = run(capsys, "bracket", "x1*d2", "x2*d1", "--format", "json")
    _, second, _ = run(capsys, "bracket", "x1*d2", "x2*d1", "--format", "json")
    assert first == second
    assert json.loads(first)["n"] == 2


def test_automorphism_commands(capsys, tri_auto):
    code, out, _ = run(capsys, "act", "--auto", tri_auto, "d2")
    assert (code, out) == (0, "-2*x2*d1 + d2")
    code, out, _ = run(capsys, "jacobian", "--auto", tri_auto, "--det")
    assert (code, out) == (0, "1")
    code, out, _ = run(capsys, "jacobian", "--auto", tri_auto)
    assert out == "[1, 0]\n[2*x2, 1]"
    code, _, err = run(capsys, "act", "--auto", tri_auto, "d2", "--n", "3")
    assert code == 2 and "does not match" in err


def test_closure_command(capsys, tmp_path):
    gens = tmp_path / "gens.json"
    gens.write_text(json.dumps({"n": 2, "generators": ["d1", "x2^2*d1", "x1^2*d2"]}), encoding="utf-8")
    code, out, _ = run(capsys, "closure", "--gens", str(gens), "--cutoff", "3")
    assert code == 0
    assert out.startswith("dim 14,")
    assert "saturated=True" in out.splitlines()[0]


def test_closure_json_feeds_back(capsys, tmp_path):
    gens = tmp_path / "gens.json"
    gens.write_text(json.dumps({"n": 2, "generators": ["d1", "x2^2*d1", "x1^2*d2"]}), encoding="utf-8")
    code, out, _ = run(capsys, "closure", "--gens", str(gens), "--cutoff", "2", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["n"] == 2 and len(doc["generators"]) == doc["dim"] == 9

    again = tmp_path / "closed.json"
    again.write_text(out, encoding="utf-8")
    code, out, _ = run(capsys, "closure", "--gens", str(again), "--cutoff", "2")
    assert code == 0 and out.startswith("dim 9,")


def test_verify_command(capsys):
    code, out, _ = run(capsys, "verify", "--theorem", "cartan", "--n", "2", "--cutoff", "3", "--format", "json")
    assert code == 0
    assert json.loads(out)["status"] == "pass"


def test_verify_suite(capsys, tmp_path, monkeypatch):
    monkeypatch.setattr(config, "RESULTS_DIR", tmp_path / "results")
    suite = tmp_path / "s.yaml"
    suite.write_text(yaml.safe_dump({
        "metadata": {"suite_name": "Tiny"},
        "checks": [{"theorem": "basis-lemma", "n": 2, "cutoff": 1}],
    }), encoding="utf-8")
    code, out, _ = run(capsys, "verify", "--suite", str(suite), "--cache")
    assert code == 0
    assert out.startswith("✅ basis-lemma (n=2, cutoff=1): pass")


@pytest.mark.parametrize(
    "argv, fragment",
    [
        (["bracket", "x1*(", "d1"], "line 1, col 4"),
        (["div", "x1", "--n", "2"], "expected a derivation"),
        (["bracket", "x3*d1", "d1", "--n", "2"], "exceeds the variable count"),
        (["verify", "--theorem", "cartan", "--n", "1", "--cutoff", "3"], "cartan needs n >= 2"),
        (["verify", "--n", "2"], "verify needs --suite"),
        (["basis", "--cutoff", "2"], "basis requires --n"),
        (["closure", "--gens", "missing.json", "--cutoff", "2"], "missing.json"),
    ],
)
def test_input_errors_exit_2(capsys, argv, fragment):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert fragment in err


@pytest.mark.parametrize(
    "command, doc",
    [
        ("act", {"n": 2, "word": [{"kind": "tri", "i": 1, "f": {"n": 2, "terms": [{"exps": 5, "coeff": 1}]}}]}),
        ("act", {"n": 2, "word": None}),
        ("act", {"n": 2, "word": [{"kind": "tri", "i": "1", "f": {"n": 2, "terms": []}}]}),
        ("closure", {"n": 2, "generators": [{"n": 2, "coeffs": [{"n": 2, "terms": None}, {"n": 2, "terms": []}]}]}),
        ("closure", {"n": 2, "generators": [{"n": 2, "coeffs": [{"n": 2, "terms": [{"exps": [-1, 0], "coeff": 1}]}] * 2}]}),
        ("closure", {"n": 2, "generators": None}),
    ],
)
def test_malformed_documents_exit_2(capsys, tmp_path, command, doc):
    path = tmp_path / "doc.json"
    path.write_text(json.dumps(doc), encoding="utf-8")
    if command == "act":
        argv = ["act", "--auto", str(path), "d2", "--n", "2"]
    else:
        argv = ["closure", "--gens", str(path), "--cutoff", "2"]
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "error:" in err


def test_argparse_exits():
    assert main(["frobnicate"]) == 2
    assert main(["verify", "--theorem", "nope"]) == 2
    assert main(["--help"]) == 0


def test_validate_suite_command(capsys, tmp_path):
    bad = tmp_path / "bad.yaml"
    bad.write_text(yaml.safe_dump({"metadata": {"suite_name": "Bad"}, "checks": []}), encoding="utf-8")
    good = config.SUITES_DIR / "quick.yaml"
    code, out, _ = run(capsys, "validate-suite", str(good))
    assert code == 0 and "Quick" in out
    code, out, _ = run(capsys, "validate-suite", str(good), str(bad))
    assert code == 1 and "'checks' list is empty" in out


def test_validate_yaml_script(capsys, tmp_path):
    assert validate_main([str(config.SUITES_DIR / "acceptance.yaml")]) == 0
    bad = tmp_path / "bad.yaml"
    bad.write_text("metadata: {suite_name: X}\nchecks:\n- {theorem: cartan, n: 2}\n", encoding="utf-8")
    assert validate_main([str(bad)]) == 1
    assert validate_main([str(tmp_path / "nothing.yaml")]) == 2
    assert validate_main([]) == 2
    capsys.readouterr()


def test_seeded_suite_json_is_byte_identical(capsys, tmp_path):
    suite = tmp_path / "r.yaml"
    suite.write_text(yaml.safe_dump({
        "metadata": {"suite_name": "Random"},
        "checks": [
            {"theorem": "bracket-oracle", "n": 2, "cutoff": 2, "trials": 5},
            {"theorem": "equivariance", "n": 2, "cutoff": 1, "trials": 3},
        ],
    }), encoding="utf-8")
    argv = ["verify", "--suite", str(suite), "--seed", "3", "--format", "json"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert [r["seed"] for r in json.loads(first)["reports"]] == [3, 3]
