from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from ptasynth.expressions import Expression, ExpressionError
from ptasynth.scalars import INF


def test_linear_evaluation():
    e = Expression.linear(-5, {"p": 2})
    assert e.evaluate({"p": Fraction(3)}) == 1


def test_infinity_evaluates_to_inf():
    assert Expression.infinity().evaluate({}) is INF


def test_polynomial_evaluation():
    e = Expression.polynomial({((("p", 1)), ("q", 1)): 0})
    e = Expression.polynomial({(("p", 1), ("q", 1)): 1, (): 1})
    assert e.evaluate({"p": Fraction(2), "q": Fraction(3)}) == 7


def test_missing_parameter_raises():
    e = Expression.linear(0, {"p": 1})
    with pytest.raises(ExpressionError):
        e.evaluate({})


def test_con_and_cf():
    e = Expression.linear(3, {"p": 2, "q": -1})
    assert e.con() == 3
    assert e.cf("p") == 2
    assert e.cf("q") == -1
    assert e.cf("r") == 0


def test_degree_one_polynomials_collapse_to_linear():
    e = Expression.polynomial({(("p", 1),): 2, (): 3})
    assert e.is_linear()
    assert e.con() == 3 and e.cf("p") == 2


def test_genuinely_nonlinear_stays_polynomial():
    e = Expression.polynomial({(("p", 2),): 1, (): -1})
    assert not e.is_linear()
    with pytest.raises(ExpressionError):
        e.con()


coeffs = st.dictionaries(st.sampled_from(["p", "q"]), st.integers(-9, 9), max_size=2)


@given(coeffs, st.integers(-9, 9), st.integers(-50, 50), st.integers(-50, 50),
       st.integers(-50, 50), st.integers(-50, 50))
def test_linear_superposition(cs, const, a1, a2, b1, b2):
    # e[g1+g2] + con(e) == e[g1] + e[g2] for linear e, in exact arithmetic
    e = Expression.linear(const, cs)
    g1 = {"p": Fraction(a1, 7), "q": Fraction(b1, 5)}
    g2 = {"p": Fraction(a2, 7), "q": Fraction(b2, 5)}
    gsum = {k: g1[k] + g2[k] for k in g1}
    assert e.evaluate(gsum) + e.con() == e.evaluate(g1) + e.evaluate(g2)


def test_negated_round_trip():
    e = Expression.linear(3, {"p": -2})
    assert e.negated().negated() == e
    q = Expression.polynomial({(("p", 2),): 3})
    assert q.negated().negated() == q


def test_render_shapes():
    assert Expression.linear(3, {"p": 2}).render() == "2*p + 3"
    assert Expression.linear(-1, {"p": 1}).render() == "p - 1"
    assert Expression.linear(0, {}).render() == "0"
    assert Expression.polynomial({(("p", 2),): 1, (): -1}).render() == "p^2 - 1"
