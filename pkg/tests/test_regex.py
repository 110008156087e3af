import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mnf_lab import (
    EMPTY,
    EPSILON,
    Concat,
    Literal,
    RegexSyntaxError,
    Star,
    Union,
    concat,
    literal,
    parse_regex,
    render_regex,
    simplify,
    star,
    union,
)
from mnf_lab.regex import ast_size

from helpers import random_regex


def test_concat_unit_and_absorbing_laws():
    a = literal("a")
    assert concat(EPSILON, a) == a
    assert concat(a, EPSILON) == a
    assert concat(EMPTY, a) == EMPTY
    assert concat(a, EMPTY) == EMPTY
    assert concat() == EPSILON
    assert concat(a) == a


def test_union_laws():
    a, b = literal("a"), literal("b")
    assert union(EMPTY, a) == a
    assert union(a, EMPTY) == a
    assert union(a, a) == a
    assert union() == EMPTY
    assert union(a, b, a) == Union((a, b))


def test_star_collapses_trivial_languages():
    a = literal("a")
    assert star(EMPTY) == EPSILON
    assert star(EPSILON) == EPSILON
    assert star(star(a)) == star(a)


def test_nested_constructors_flatten():
    a, b, c = literal("a"), literal("b"), literal("c")
    assert concat(concat(a, b), c) == Concat((a, b, c))
    assert union(union(a, b), c) == Union((a, b, c))


def test_simplify_unit_laws_chain():
    # eps* m void*  ->  m
    m = literal("m")
    raw = Concat((Star(EPSILON), m, Star(EMPTY)))
    assert simplify(raw) == m


def test_simplify_idempotence_rewrite():
    a = literal("a")
    assert simplify(Union((a, a))) == a


def test_simplify_leaves_normal_forms_alone():
    r = parse_regex("(a b c)* (g h i + eps) (d e f)*")
    assert simplify(r) == r


def test_parse_example_shapes():
    r = parse_regex("(abc)*(ghi+eps)(def)*")
    assert r == Concat((
        Star(literal("abc")),
        Union((literal("ghi"), EPSILON)),
        Star(literal("def")),
    ))
    assert parse_regex("void") == EMPTY
    assert parse_regex("eps") == EPSILON
    assert parse_regex("u* m v*") == Concat((Star(literal("u")), literal("m"), Star(literal("v"))))


def test_parse_precedence():
    # star > concat > union
    assert parse_regex("a+b c*") == Union((
        literal("a"),
        Concat((literal("b"), Star(literal("c")))),
    ))
    assert parse_regex("a|b") == parse_regex("a+b")


def test_multi_character_tokens_are_single_literals():
    assert parse_regex("abc*") == Star(literal("abc"))
    assert parse_regex("a b c") == Concat((literal("a"), literal("b"), literal("c")))


def test_parse_errors_carry_positions():
    for text, position in [("(a", 2), ("a +", 3), ("*a", 0), (")", 0), ("", 0), ("a )", 2)]:
        with pytest.raises(RegexSyntaxError) as err:
            parse_regex(text)
        assert err.value.position == position


def test_render_known_forms():
    assert render_regex(EMPTY) == "void"
    assert render_regex(EPSILON) == "eps"
    assert render_regex(parse_regex("(a b)* (c + eps)")) == "(a b)* (c + eps)"
    assert render_regex(parse_regex("abc*")) == "abc*"


def test_render_parse_round_trip_fixed_cases():
    for text in [
        "(a b c)* (g h i + eps) (d e f)*",
        "(a u* m v*)* (g* i h* p* r q* + eps) (x* n y* d e f)*",
        "a + b c + eps",
        "void",
        "(a + b)* c",
    ]:
        r = parse_regex(text)
        assert parse_regex(render_regex(r)) == r


@settings(max_examples=80, deadline=None)
@given(st.integers(0, 10**9))
def test_render_parse_round_trip_random(seed):
    rng = random.Random(seed)
    r = random_regex(rng, ["a", "b", "c"], 4)
    assert parse_regex(render_regex(r)) == r


def test_ast_size_counts_nodes():
    assert ast_size(literal("a")) == 1
    # Union + Star + Concat + three literals
    assert ast_size(parse_regex("(a b)* + c")) == 6
