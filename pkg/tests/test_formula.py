import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mtlfilter.errors import FormulaSyntaxError, IntervalError, UnsupportedNegation
from mtlfilter.formula import (
    FALSE, TRUE, And, Finally, Globally, Historically, Not, Once, Or, Prop, Since,
    TimeInterval, Until, depth, derived_expansions, format_formula, is_pnf, parse,
    propositions, to_pnf,
)
from mtlfilter.oracle import oracle_discrete_trace
from mtlfilter.randgen import random_discrete_bundle, random_formula


def test_parse_examples():
    assert parse("O[1,4] p") == Once(TimeInterval(1, 4), Prop("p"))
    assert parse("p S[2,4] q") == Since(TimeInterval(2, 4), Prop("p"), Prop("q"))
    assert parse("F[3] p") == Finally(TimeInterval(3, 3), Prop("p"))
    assert parse("true | false") == Or(TRUE, FALSE)


def test_precedence():
    assert parse("!p & q | r") == Or(And(Not(Prop("p")), Prop("q")), Prop("r"))
    assert parse("G[0,1] p & q") == And(Globally(TimeInterval(0, 1), Prop("p")), Prop("q"))
    assert parse("p & q U[1,2] r") == And(Prop("p"), Until(TimeInterval(1, 2), Prop("q"), Prop("r")))


def test_operator_letters_are_props_without_bracket():
    assert parse("F & G") == And(Prop("F"), Prop("G"))


def test_interval_errors():
    with pytest.raises(IntervalError, match="interval lower bound exceeds upper"):
        parse("F[4,2] p")
    with pytest.raises(IntervalError):
        TimeInterval(2, 2, lo_open=True)


def test_syntax_errors_carry_position():
    with pytest.raises(FormulaSyntaxError) as exc:
        parse("p & ")
    assert exc.value.position == 4
    with pytest.raises(FormulaSyntaxError):
        parse("p U[1,2] q U[1,2] r")
    with pytest.raises(FormulaSyntaxError):
        parse("p $ q")
    with pytest.raises(FormulaSyntaxError):
        parse("(p")


def test_to_pnf_examples():
    assert to_pnf(parse("!(p | q)")) == parse("!p & !q")
    assert to_pnf(parse("!F[1,4] p")) == parse("G[1,4] !p")
    assert to_pnf(parse("!H[1,2] !p")) == parse("O[1,2] p")
    with pytest.raises(UnsupportedNegation):
        to_pnf(parse("!(p U[1,2] q)"))


def test_derived_expansions():
    assert derived_expansions(parse("F[1,4] p")) == parse("true U[1,4] p")
    assert derived_expansions(parse("O[0,2] p")) == parse("true S[0,2] p")
    assert derived_expansions(parse("G[1,2] p")) == parse("!(true U[1,2] !p)")


def test_helpers():
    f = parse("F[1,2] (p & !q) | r")
    assert propositions(f) == {"p", "q", "r"}
    assert depth(f) == 5
    assert not is_pnf(parse("!F[1,2] p"))


def _formulas():
    leaf = st.one_of(st.sampled_from([TRUE, FALSE]), st.sampled_from("pqr").map(Prop))
    interval = st.tuples(st.integers(0, 9), st.integers(0, 9)).map(
        lambda ab: TimeInterval(min(ab), max(ab))
    )

    def extend(inner):
        return st.one_of(
            inner.map(Not),
            st.tuples(inner, inner).map(lambda t: And(*t)),
            st.tuples(inner, inner).map(lambda t: Or(*t)),
            st.tuples(st.sampled_from([Finally, Globally, Once, Historically]), interval, inner)
              .map(lambda t: t[0](t[1], t[2])),
            st.tuples(st.sampled_from([Until, Since]), interval, inner, inner)
              .map(lambda t: t[0](t[1], t[2], t[3])),
        )

    return st.recursive(leaf, extend, max_leaves=12)


@settings(max_examples=300, deadline=None)
@given(_formulas())
def test_print_parse_round_trip(f):
    assert parse(format_formula(f)) == f


def test_pnf_preserves_classical_semantics():
    rng = np.random.default_rng(11)
    checked = 0
    while checked < 300:
        f = random_formula(rng, depth=4)
        try:
            g = to_pnf(f)
        except UnsupportedNegation:
            continue
        assert is_pnf(g)
        x = random_discrete_bundle(rng)
        assert oracle_discrete_trace(f, x) == oracle_discrete_trace(g, x)
        checked += 1
