import random

import pytest
from hypothesis import given

from acccheck.ltl import (
    And, Atom, Eventually, Globally, Implies, Next, Not, Or, ParseError, Release, SchemaMismatch, Until,
    parse_expr, parse_formula, parse_predicate, to_text,
)
from helpers import formulas, random_formula

p, q, r = Atom("p"), Atom("q"), Atom("r")


class TestFormulaParsing:
    def test_stability_shape(self):
        assert parse_formula("F G ss") == Eventually(Globally(Atom("ss")))

    def test_until(self):
        assert parse_formula("p U q") == Until(p, q)

    @pytest.mark.parametrize("text, expected", [
        ("p -> q -> r", Implies(p, Implies(q, r))),
        ("p | q & r", Or(p, And(q, r))),
        ("p & q | r", Or(And(p, q), r)),
        ("p U q U r", Until(p, Until(q, r))),
        ("p R q U r", Release(p, Until(q, r))),
        ("p & q U r", And(p, Until(q, r))),
        ("!p U q", Until(Not(p), q)),
        ("G p -> F q", Implies(Globally(p), Eventually(q))),
        ("X X p", Next(Next(p))),
        ("F(p U q)", Eventually(Until(p, q))),
        ("!(p & q)", Not(And(p, q))),
    ])
    def test_precedence(self, text, expected):
        assert parse_formula(text) == expected

    def test_de_morgan_forms_are_distinct_trees(self):
        assert parse_formula("!(p & q)") != parse_formula("!p | !q")

    def test_identifiers_may_contain_keyword_letters(self):
        assert parse_formula("Gx & Fast") == And(Atom("Gx"), Atom("Fast"))


class TestParseErrors:
    def test_truncated_input_reports_position_and_expected(self):
        with pytest.raises(ParseError) as info:
            parse_formula("p & (q U")
        err = info.value
        assert (err.line, err.column) == (1, 9)
        assert {"(", "!", "<identifier>"} <= set(err.expected)

    def test_line_counting(self):
        with pytest.raises(ParseError) as info:
            parse_formula("p\n & & q")
        assert (info.value.line, info.value.column) == (2, 4)

    def test_unbalanced_parenthesis(self):
        with pytest.raises(ParseError) as info:
            parse_formula("(p | q")
        assert ")" in info.value.expected

    def test_trailing_garbage(self):
        with pytest.raises(ParseError):
            parse_formula("p q")

    def test_bad_character(self):
        with pytest.raises(ParseError):
            parse_formula("p $ q")


class TestRoundTrip:
    @given(formulas())
    def test_print_then_parse_is_identity(self, f):
        assert parse_formula(to_text(f)) == f

    def test_seeded_random_corpus(self):
        rng = random.Random(7)
        for _ in range(300):
            f = random_formula(rng, 5)
            assert parse_formula(to_text(f)) == f

    def test_minimal_parentheses(self):
        assert to_text(parse_formula("((p | q)) & (r)")) == "(p | q) & r"
        assert to_text(parse_formula("(p U q) U r")) == "(p U q) U r"
        assert to_text(parse_formula("p U (q U r)")) == "p U q U r"


class TestPredicates:
    def test_band_predicate(self):
        pred = parse_predicate("ss = abs(d_rel - d_safe) <= 0.05 * d_safe")
        assert pred.name == "ss"
        assert pred.columns() == {"d_rel", "d_safe"}
        assert pred({"d_rel": 10.4, "d_safe": 10.0})
        assert not pred({"d_rel": 10.6, "d_safe": 10.0})

    @pytest.mark.parametrize("text, value", [
        ("1 + 2 * 3", 7.0), ("(1 + 2) * 3", 9.0), ("-x + 4", 1.0), ("abs(-x) / 2", 1.5), ("1e1 - .5", 9.5),
    ])
    def test_arithmetic(self, text, value):
        assert parse_expr(text).evaluate({"x": 3.0}) == pytest.approx(value)

    def test_single_equals_means_equality(self):
        assert parse_predicate("z = x = 3")({"x": 3.0})

    def test_division_by_literal_zero_rejected(self):
        with pytest.raises(ParseError, match="zero"):
            parse_predicate("a = x / 0 > 1")

    def test_schema_mismatch_names_missing_columns(self):
        pred = parse_predicate("ss = d_rel > d_safe")
        with pytest.raises(SchemaMismatch, match="d_safe"):
            pred.validate(["t", "d_rel"])

    def test_missing_comparison(self):
        with pytest.raises(ParseError):
            parse_predicate("a = x + 1")
