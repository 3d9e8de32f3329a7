import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kantcheck.expr import (
    Affects,
    And,
    Causes,
    End,
    Goal,
    Implies,
    Literal,
    Means,
    Not,
    Or,
    Var,
)
from kantcheck.syntax import ParseError, parse_literal, parse_mechanism, parse_query, render

from helpers import height, trees


def test_mechanism_from_light_switch():
    assert parse_mechanism("press & !bulbBroken") == And(Var("press"), Not(Var("bulbBroken")))


def test_and_binds_tighter_than_or():
    assert parse_mechanism("a | b & c") == Or(Var("a"), And(Var("b"), Var("c")))


def test_redundant_parentheses_vanish():
    assert parse_mechanism("((x))") == Var("x")


@pytest.mark.parametrize(
    "text, tree",
    [
        ("a & b & c", And(And(Var("a"), Var("b")), Var("c"))),
        ("a | b | c", Or(Or(Var("a"), Var("b")), Var("c"))),
        ("!a & b", And(Not(Var("a")), Var("b"))),
        ("!(a & b)", Not(And(Var("a"), Var("b")))),
        ("  a\n|\tb ", Or(Var("a"), Var("b"))),
    ],
)
def test_mechanism_shapes(text, tree):
    assert parse_mechanism(text) == tree


@pytest.mark.parametrize("text", ["", "a &", "a b", "(a", "a)", "a -> b", "Goal(a)", "a # b", "&a"])
def test_mechanism_syntax_errors(text):
    with pytest.raises(ParseError):
        parse_mechanism(text)


def test_error_carries_position():
    with pytest.raises(ParseError) as info:
        parse_mechanism("a & & b")
    assert info.value.position == 4


def test_unknown_variables_are_not_a_parse_error():
    assert parse_mechanism("nosuchvar") == Var("nosuchvar")


def test_query_implication_of_predicates():
    assert parse_query("Means1(Bob) -> End(Bob)") == Implies(Means(1, "Bob"), End("Bob"))


def test_query_causes():
    f = parse_query("Causes(!survive6, survive1 | survive2)")
    assert f == Causes(Literal("survive6", False), Or(Var("survive1"), Var("survive2")))


def test_query_end_arity():
    with pytest.raises(ParseError, match="End expects 1 argument"):
        parse_query("End()")


@pytest.mark.parametrize(
    "text",
    [
        "Affects(a, Bob)",
        "Affects(a, Bob, +, -)",
        "Goal(a, b)",
        "Means1()",
        "Causes(a)",
        "Means3(Bob)",
        "Affects(a, Bob, *)",
        "Goal(a & b)",
        "Goal(!!a)",
        'End("")',
    ],
)
def test_query_errors(text):
    with pytest.raises(ParseError):
        parse_query(text)


def test_causes_effect_must_be_predicate_free():
    with pytest.raises(ParseError, match="Causes effect"):
        parse_query("Causes(a, End(Bob))")
    with pytest.raises(ParseError):
        parse_query("Causes(a, Causes(b, c))")
    assert parse_query("Causes(a, Goal(b) & Affects(b, Bob, -))")


def test_implication_is_right_associative():
    assert parse_query("a -> b -> c") == Implies(Var("a"), Implies(Var("b"), Var("c")))


def test_quoted_patient():
    assert parse_query('End("Mr. Smith")') == End("Mr. Smith")
    assert parse_query('Affects(!x, "Bob", -)') == Affects(Literal("x", False), "Bob", "-")


def test_predicate_names_are_ordinary_atoms_without_parentheses():
    assert parse_query("End & Goal") == And(Var("End"), Var("Goal"))


def test_render_examples():
    assert render(And(Var("press"), Not(Var("bulbBroken")))) == "press & !bulbBroken"
    assert render(Not(Not(Var("x")))) == "!!x"
    assert render(Means(1, "Bob")) == "Means1(Bob)"
    assert render(Literal("drown", False)) == "!drown"


def test_render_parenthesizes_only_when_needed():
    assert render(Or(Var("a"), And(Var("b"), Var("c")))) == "a | b & c"
    assert render(And(Var("a"), Or(Var("b"), Var("c")))) == "a & (b | c)"
    assert render(And(Var("a"), And(Var("b"), Var("c")))) == "a & (b & c)"
    assert render(Implies(Implies(Var("a"), Var("b")), Var("c"))) == "(a -> b) -> c"
    assert render(Not(Or(Var("a"), Var("b")))) == "!(a | b)"


def test_render_quotes_odd_patient_names():
    assert render(End("Mr. Smith")) == 'End("Mr. Smith")'


@pytest.mark.parametrize("text", ["x", "!x", "_under_score9"])
def test_literal_round_trip(text):
    lit = parse_literal(text)
    assert str(lit) == text
    assert lit.negate().negate() == lit


@pytest.mark.parametrize("text", ["", "!!x", "x & y", "!", "9x"])
def test_literal_errors(text):
    with pytest.raises(ParseError):
        parse_literal(text)


@given(trees())
def test_query_round_trip(tree):
    assert height(tree) <= 6
    assert parse_query(render(tree)) == tree


@given(trees(queries=False))
def test_mechanism_round_trip(tree):
    assert parse_mechanism(render(tree)) == tree


@settings(max_examples=500)
@given(st.text(alphabet=st.sampled_from(list('ab!&|()-> ,+"Goal End Means1 Causes Affects\\')), max_size=40))
def test_parser_is_total_on_grammar_soup(text):
    for parse in (parse_query, parse_mechanism):
        try:
            parse(text)
        except ParseError:
            pass


@given(st.binary(max_size=64))
def test_parser_is_total_on_bytes(data):
    try:
        parse_query(data.decode("utf-8", errors="replace"))
    except ParseError:
        pass


def test_deep_nesting_is_a_parse_error():
    with pytest.raises(ParseError, match="nested too deeply"):
        parse_query("(" * 5000 + "a" + ")" * 5000)
    with pytest.raises(ParseError, match="nested too deeply"):
        parse_mechanism("!" * 5000 + "a")
