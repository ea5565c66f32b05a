import json
from fractions import Fraction

import pytest

from core.autos import Affine, Automorphism, Triangular, conjugate
from core.codec import (
    automorphism_from_json,
    automorphism_to_json,
    derivation_from_json,
    derivation_to_json,
    dumps,
    format_derivation,
    format_polynomial,
    format_value,
    generators_from_json,
    load_document,
    polynomial_from_json,
    polynomial_to_json,
    value_to_json,
)
from core.errors import InvalidAutomorphismError, LoweringError
from core.poly import Polynomial
from core.vecfield import Derivation, make_Hdiff, make_partial


def test_format_polynomial_descending_grlex():
    p = Polynomial(2, {(2, 1): 3, (0, 1): -1, (0, 0): Fraction(1, 2)})
    assert format_polynomial(p) == "3*x1^2*x2 - x2 + 1/2"
    assert format_polynomial(Polynomial.zero(3)) == "0"
    assert format_polynomial(Polynomial(2, {(1, 0): -1})) == "-x1"


def test_format_derivation():
    assert format_derivation(make_Hdiff(2, 1, 2)) == "x1*d1 - x2*d2"
    assert format_derivation(make_partial(2, 1) * Fraction(-1, 2)) == "-1/2*d1"
    assert format_derivation(Derivation.zero(2)) == "0"
    assert format_value(Fraction(3, 4)) == "3/4"


def test_polynomial_document():
    p = Polynomial(2, {(2, 1): Fraction(-3, 2), (0, 0): 4})
    doc = polynomial_to_json(p)
    assert doc == {
        "n": 2,
        "terms": [{"exps": [2, 1], "coeff": "-3/2"}, {"exps": [0, 0], "coeff": "4"}],
    }
    assert polynomial_from_json(doc) == p


def test_integer_coefficients_accepted():
    doc = {"n": 1, "terms": [{"exps": [1], "coeff": 2}, {"exps": [1], "coeff": "1/2"}]}
    assert polynomial_from_json(doc) == Polynomial(1, {(1,): Fraction(5, 2)})


@pytest.mark.parametrize(
    "doc",
    [
        [],
        {"terms": []},
        {"n": 0, "terms": []},
        {"n": True, "terms": []},
        {"n": 1},
        {"n": 1, "terms": [{"exps": [1]}]},
        {"n": 1, "terms": [{"exps": [1], "coeff": 0.5}]},
        {"n": 1, "terms": [{"exps": [1], "coeff": "1/0"}]},
        {"n": 1, "terms": None},
        {"n": 1, "terms": {"exps": [1], "coeff": 1}},
        {"n": 1, "terms": [{"exps": 5, "coeff": 1}]},
        {"n": 1, "terms": [{"exps": [-1], "coeff": 1}]},
        {"n": 1, "terms": [{"exps": [1.5], "coeff": 1}]},
        {"n": 2, "terms": [{"exps": [1], "coeff": 1}]},
        {"n": 1, "terms": [5]},
    ],
)
def test_bad_polynomial_documents(doc):
    with pytest.raises(ValueError):
        polynomial_from_json(doc)


def test_derivation_document():
    d = make_Hdiff(2, 1, 2)
    assert derivation_from_json(derivation_to_json(d)) == d
    doc = derivation_to_json(d)
    doc["coeffs"] = doc["coeffs"][:1]
    with pytest.raises(ValueError):
        derivation_from_json(doc)
    with pytest.raises(ValueError):
        derivation_from_json({"n": 2, "coeffs": None})


def test_automorphism_document():
    x2 = Polynomial.variable(2, 2)
    sigma = Automorphism(2, [Affine([[0, 1], [1, 0]], [Fraction(1, 2), 0]), Triangular(1, x2 ** 2)])
    doc = automorphism_to_json(sigma)
    assert doc["word"][0] == {"kind": "affine", "A": [["0", "1"], ["1", "0"]], "b": ["1/2", "0"]}
    assert doc["word"][1]["kind"] == "tri"
    again = automorphism_from_json(json.loads(dumps(doc)))
    assert again.forward_images() == sigma.forward_images()
    assert conjugate(again, make_partial(2, 2)) == conjugate(sigma, make_partial(2, 2))


def test_automorphism_document_errors():
    with pytest.raises(ValueError):
        automorphism_from_json({"n": 2, "word": [{"kind": "shear"}]})
    with pytest.raises(ValueError):
        automorphism_from_json({"n": 2, "word": None})
    with pytest.raises(ValueError):
        automorphism_from_json({"n": 2, "word": [{"kind": "affine", "A": [1, 0]}]})
    with pytest.raises(ValueError):
        automorphism_from_json({"n": 2, "word": [{"kind": "tri", "i": [1], "f": {"n": 2, "terms": []}}]})
    with pytest.raises(InvalidAutomorphismError):
        automorphism_from_json({"n": 2, "word": [{"kind": "affine", "A": [[1, 1], [1, 1]]}]})


def test_generators_mix_text_and_documents():
    doc = {"n": 2, "generators": ["d1", "x2^2*d1", derivation_to_json(make_Hdiff(2, 1, 2))]}
    gens = generators_from_json(doc)
    assert gens[0] == make_partial(2, 1)
    assert gens[1] == Derivation.term(2, (0, 2), 1)
    assert gens[2] == make_Hdiff(2, 1, 2)
    with pytest.raises(LoweringError):
        generators_from_json({"n": 2, "generators": ["x1"]})
    with pytest.raises(ValueError):
        generators_from_json({"n": 2, "generators": "d1"})


def test_value_to_json_rejects_other_types():
    with pytest.raises(TypeError):
        value_to_json(3)


def test_dumps_is_stable(tmp_path):
    doc = value_to_json(make_Hdiff(2, 1, 2))
    text = dumps(doc)
    assert text == dumps(json.loads(text))
    path = tmp_path / "h.json"
    path.write_text(text, encoding="utf-8")
    assert derivation_from_json(load_document(path)) == make_Hdiff(2, 1, 2)
