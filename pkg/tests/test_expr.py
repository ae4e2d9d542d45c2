from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rsl.errors import DegreeCapExceeded, DiscontinuousPiecewise, ParseError
from rsl.exactnum import Polynomial
from rsl.expr import BinOp, Call, Neg, Num, Pow, Var, eval_expr, parse_expr, parse_to_pw, pretty
from rsl.piecewise import Domain, pw_eval

from .corpus import EXPRESSIONS

D = Domain(0, 1)
T = Polynomial.identity()
HALF = Fraction(1, 2)
CORPUS_MIN = 50
AGREEMENT_POINTS = 200
SAMPLES = [Fraction(i, AGREEMENT_POINTS - 1) for i in range(AGREEMENT_POINTS)]


def test_corpus_size() -> None:
    assert len(EXPRESSIONS) >= CORPUS_MIN


@pytest.mark.parametrize("src", EXPRESSIONS)
def test_pretty_round_trip(src: str) -> None:
    e = parse_expr(src)
    assert parse_expr(pretty(e)) == e


@pytest.mark.parametrize("src", EXPRESSIONS)
def test_elaboration_agrees_with_direct_evaluation(src: str) -> None:
    e = parse_expr(src)
    f = parse_to_pw(src, D)
    for x in SAMPLES:
        assert pw_eval(f, x) == eval_expr(e, x), x


def test_examples() -> None:
    f = parse_to_pw("abs(t - 1/2)", D)
    assert f.breakpoints == (HALF,)
    g = parse_to_pw("max(t, 1 - t)", D)
    assert g.breakpoints == (HALF,) and g.pieces == (1 - T, T)
    assert parse_to_pw("piecewise{[0,1/2): t; [1/2,1]: 1 - t}", D) == parse_to_pw("min(t, 1 - t)", D)


def test_precedence() -> None:
    assert parse_expr("1 + 2*t^2") == BinOp("+", Num(Fraction(1)), BinOp("*", Num(Fraction(2)), Pow(Var(), 2)))
    assert parse_expr("-t^2") == Neg(Pow(Var(), 2))
    assert parse_expr("1 - t - t") == BinOp("-", BinOp("-", Num(Fraction(1)), Var()), Var())
    assert parse_expr("max(t, 1)") == Call("max", (Var(), Num(Fraction(1))))


def test_discontinuity_names_point() -> None:
    with pytest.raises(DiscontinuousPiecewise) as info:
        parse_to_pw("piecewise{[0,1/2): t; [1/2,1]: 1 - 2*t}", D)
    assert info.value.extra["point"] == HALF
    assert info.value.to_json()["point"] == "1/2"


def test_piecewise_must_cover_domain() -> None:
    with pytest.raises(DiscontinuousPiecewise):
        parse_to_pw("piecewise{[0,1/2]: t}", D)


def test_cap_applies_to_result_only() -> None:
    d2 = Domain(0, 1, cap=2)
    assert parse_to_pw("(t^3 + 1) - t^3", d2).max_degree == 0
    with pytest.raises(DegreeCapExceeded):
        parse_to_pw("t^3", d2)


@pytest.mark.parametrize(
    "src, line, column",
    [
        ("t + * 2", 1, 5),
        ("abs(t", 1, 6),
        ("foo(t)", 1, 1),
        ("t ^ 1/2", 1, 5),
        ("t\n  + $", 2, 5),
        ("max(t)", 1, 6),
        ("piecewise{[0,1/2): t; (1/3,1]: t}", 1, 23),
        ("piecewise{[1/2,1/2]: t}", 1, 11),
        ("", 1, 1),
        ("t t", 1, 3),
        ("t + 1/0", 1, 5),
    ],
)
def test_syntax_errors(src: str, line: int, column: int) -> None:
    with pytest.raises(ParseError) as info:
        parse_expr(src)
    assert (info.value.extra["line"], info.value.extra["column"]) == (line, column)
    assert info.value.code == "SyntaxError"


# random ASTs
leaves = st.one_of(
    st.just(Var()),
    st.fractions(0, 5, max_denominator=6).map(Num),
)


def _extend(children: st.SearchStrategy) -> st.SearchStrategy:
    return st.one_of(
        children.map(Neg),
        st.tuples(st.sampled_from("+-*"), children, children).map(lambda a: BinOp(*a)),
        st.tuples(children, st.integers(0, 3)).map(lambda a: Pow(*a)),
        st.tuples(st.sampled_from(["abs", "pos", "neg"]), children).map(lambda a: Call(a[0], (a[1],))),
        st.tuples(st.sampled_from(["max", "min"]), children, children).map(lambda a: Call(a[0], (a[1], a[2]))),
    )


asts = st.recursive(leaves, _extend, max_leaves=8)


@settings(max_examples=80, deadline=None)
@given(asts)
def test_random_ast_round_trip_and_agreement(e) -> None:
    assert parse_expr(pretty(e)) == e
    f = parse_to_pw(pretty(e), D)
    for x in (Fraction(0), Fraction(1, 3), HALF, Fraction(5, 7), Fraction(1)):
        assert pw_eval(f, x) == eval_expr(e, x)
