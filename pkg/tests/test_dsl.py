import json

import pytest
from hypothesis import given, strategies as st

from dsl.dsl_elaborate import elaborate, ring_from_text
from dsl.dsl_parser import ParseError, parse, pretty, tokenize
from rings.descriptors import Prod, Tnk, Zn
from rings.errors import InvalidParameter, OrderOverflow
from utils.utils_config import RunConfig

_small = st.integers(min_value=1, max_value=9)

expressions = st.recursive(
    _small.map(lambda n: f"Z({n})"),
    lambda inner: st.one_of(
        st.lists(inner, min_size=2, max_size=3).map(lambda fs: "Prod(" + " , ".join(fs) + ")"),
        st.tuples(inner, _small).map(lambda t: f"Mat({t[0]},{t[1]})"),
        st.tuples(inner, _small).map(lambda t: f"UT( {t[0]} , {t[1]} )"),
        st.tuples(inner, _small, _small).map(lambda t: f"Tnk({t[0]},\n{t[1]}, {t[2]})"),
        inner.map(lambda e: f"Triv({e})"),
        st.tuples(inner, _small).map(lambda t: f"PolyMod({t[0]},{t[1]})"),
    ),
    max_leaves=5,
)


@given(expressions)
def test_pretty_is_a_fixed_point(text):
    canonical = pretty(parse(text))
    assert pretty(parse(canonical)) == canonical
    assert parse(canonical) == parse(text)
    assert " ," not in canonical and "( " not in canonical


def test_canonical_spacing():
    assert pretty(parse("Tnk( Z(4) ,3,1 )")) == "Tnk(Z(4), 3, 1)"
    assert pretty(parse("Prod(Z(2),Z(3),Z(5))")) == "Prod(Z(2), Z(3), Z(5))"


def test_nodes_keep_their_spans():
    tree = parse("Tnk(Z(4), 3, 1)")
    assert isinstance(tree, Tnk)
    assert tree.span == (0, 15)
    assert tree.base.span == (4, 8)
    assert tree == Tnk(Zn(4), 3, 1)


def test_tokens():
    kinds = [t.kind for t in tokenize("Z(12)")]
    assert kinds == ["ident", "(", "int", ")", "eof"]


@pytest.mark.parametrize(
    "text, line, column, expected",
    [
        ("Z(", 1, 3, "integer"),
        ("Foo(2)", 1, 1, "Prod"),
        ("Z(2) x", 1, 6, "end of input"),
        ("Mat(Z(2) 2)", 1, 10, ","),
        ("Prod(Z(2),\n  Q(3))", 2, 3, "Z"),
        ("Z(-1)", 1, 3, "integer"),
        ("Z(\u00b2)", 1, 3, "integer"),
        ("Z(\u0663)", 1, 3, "integer"),
    ],
)
def test_parse_errors_point_at_the_input(text, line, column, expected):
    with pytest.raises(ParseError) as info:
        parse(text)
    error = info.value
    assert (error.line, error.column) == (line, column)
    assert expected in error.expected


def test_arity_errors():
    for text in ["Prod(Z(2))", "Mat(Z(2), 2, 3)", "Z(Z(2))", "Tnk(Z(2), 3)"]:
        with pytest.raises(ParseError) as info:
            parse(text)
        assert info.value.column == 1


def test_parse_error_json():
    with pytest.raises(ParseError) as info:
        parse("Z(")
    data = json.loads(json.dumps(info.value.to_dict()))
    assert data["error"] == "ParseError"
    assert (data["line"], data["column"]) == (1, 3)


def test_elaborate_builds_the_named_ring():
    ring = ring_from_text("Prod(Z(2), Tnk(Z(2), 3, 1))")
    assert ring.order == 2 * 16
    assert ring.text == "Prod(Z(2), Tnk(Z(2), 3, 1))"
    assert isinstance(ring.descriptor, Prod)


def test_parameter_errors_carry_the_node_span():
    with pytest.raises(InvalidParameter) as info:
        ring_from_text("Prod(Z(2), Tnk(Z(2), 3, 3))")
    assert info.value.span == (11, 26)
    with pytest.raises(InvalidParameter) as info:
        ring_from_text("Triv(Z(0))")
    assert info.value.span == (5, 9)


def test_order_overflow_uses_configured_cap():
    with pytest.raises(OrderOverflow) as info:
        ring_from_text("Mat(Z(2), 3)", RunConfig(enumeration_cap=256))
    assert info.value.span == (0, 12)
    assert info.value.cap == 256
    assert elaborate(parse("Mat(Z(2), 2)"), enumeration_cap=16).order == 16


def test_only_ascii_digits_and_letters_tokenize():
    for text in ["٣", "²", "１", "é"]:
        with pytest.raises(ParseError):
            tokenize(text)
    assert [t.text for t in tokenize("Tnk2(10)")][:3] == ["Tnk2", "(", "10"]


def test_huge_matrix_size_fails_fast():
    with pytest.raises(OrderOverflow) as info:
        ring_from_text("Mat(Z(2), 100000)")
    assert info.value.span == (0, 17)
