import json

import pytest
from hypothesis import given, strategies as st

import randgen as G
from nlbialgebra import catalog
from nlbialgebra.document import ProblemDocument, build, from_problem, parse, serialize
from nlbialgebra.errors import ParseError, SchemaError
from nlbialgebra.exact import Operator


def minimal(**extra):
    doc = {"name": "t", "dimension": 2, "bracket": [{"on": [0, 1], "value": {"1": "1"}}]}
    doc.update(extra)
    return json.dumps(doc)


@pytest.mark.parametrize("name", catalog.names())
def test_catalog_round_trip(name):
    doc = from_problem(catalog.get(name))
    text = serialize(doc)
    assert parse(text) == doc
    assert serialize(parse(text.encode())) == text
    pb = build(doc)
    assert pb.algebra.bracket == catalog.get(name).algebra.bracket


def test_minimal_document_defaults():
    doc = parse(minimal())
    assert doc.basis == ("X1", "X2")
    assert doc.cobracket is None and doc.operator is None and doc.r_matrix is None
    assert build(doc).algebra.bracket.basis_bracket(0, 1) == (0, 1)


def test_empty_bracket_list_is_abelian():
    doc = parse(json.dumps({"name": "ab", "dimension": 3, "bracket": []}))
    assert build(doc).algebra.bracket.is_zero()


@pytest.mark.parametrize("text, where", [
    ("{", "malformed JSON"),
    (b"\xff", "UTF-8"),
])
def test_parse_errors(text, where):
    with pytest.raises(ParseError, match=where):
        parse(text)


@pytest.mark.parametrize("doc, where", [
    ([], "top level"),
    ({"dimension": 2}, "missing field 'name'"),
    ({"name": "t", "dimension": 0}, "dimension"),
    ({"name": "t", "dimension": True}, "dimension"),
    ({"name": "t", "dimension": 2, "extra": 1}, "unknown field 'extra'"),
    ({"name": "t", "dimension": 2, "basis": ["a", "a"]}, "distinct"),
    ({"name": "t", "dimension": 2, "basis": ["a"]}, "basis"),
    ({"name": "t", "dimension": 2, "bracket": [{"on": [1, 1], "value": {}}]}, r"bracket\[0\]\.on: repeated"),
    ({"name": "t", "dimension": 2, "bracket": [{"on": [1, 0], "value": {}}]}, "not increasing"),
    ({"name": "t", "dimension": 2, "bracket": [{"on": [0, 2], "value": {}}]}, "out of range"),
    ({"name": "t", "dimension": 2, "bracket": [{"on": [0, 1], "value": {"0": 1}}]}, r"value\[0\]"),
    ({"name": "t", "dimension": 2, "bracket": [{"on": [0, 1], "value": {"0": "1.5"}}]}, "rational"),
    ({"name": "t", "dimension": 2, "bracket": [{"on": [0, 1], "value": {"0": "1/0"}}]}, "zero denominator"),
    ({"name": "t", "dimension": 2, "bracket": [{"on": [0, 1]}]}, "missing field 'value'"),
    ({"name": "t", "dimension": 2, "bracket": [{"on": [0, 1], "value": {}}, {"on": [0, 1], "value": {}}]},
     "duplicate"),
    ({"name": "t", "dimension": 2, "operator": [["1", "0"]]}, "2x2"),
    ({"name": "t", "dimension": 2, "operator": [["1", "0"], ["0", 1]]}, r"operator\[1\]\[1\]"),
    ({"name": "t", "dimension": 2, "cobracket": [{"on": 5, "value": []}]}, r"cobracket\[0\]\.on"),
    ({"name": "t", "dimension": 2, "r_matrix": [{"pair": [0, 1], "coeff": "x"}]}, r"r_matrix\[0\]\.coeff"),
    ({"name": "t", "dimension": 2, "r_matrix": {"pair": [0, 1]}}, "r_matrix: expected an array"),
])
def test_schema_errors_name_the_field(doc, where):
    with pytest.raises(SchemaError, match=where):
        parse(json.dumps(doc))


@given(st.randoms(use_true_random=False))
def test_random_documents_round_trip(rng):
    dim = rng.choice([2, 3, 4])
    b = G.lie_algebra(rng, dim)
    doc = ProblemDocument(
        "random", dim, tuple(f"E{i}" for i in range(dim)),
        tuple((p, tuple((k, c) for k, c in enumerate(v) if c)) for p, v in b.items() if any(v)),
        tuple((i, tuple(sorted((k, c) for k, c in G.multivector(rng, dim, 2).items() if c)))
              for i in range(dim)),
        tuple(tuple(r) for r in G.operator(rng, dim).rows),
        tuple(sorted((k, c) for k, c in G.multivector(rng, dim, 2).items() if c)),
    )
    assert parse(serialize(doc)) == doc
    built = build(doc)
    assert built.algebra.bracket == b
    assert built.operator == Operator(doc.operator)
