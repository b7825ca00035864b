"""Exact scalar domains: rational functions, Puiseux series, tropical values."""

from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from flagmirror.errors import (
    DivisionByZero,
    NonMonomialDenominator,
    NotSubtractionFree,
    TruncationRequired,
    UnknownValuation,
)
from flagmirror.scalars import (
    AffineForm,
    LamForm,
    PuiseuxSeries,
    TROP_INFINITY,
    TropExpr,
    TropValue,
    is_positive,
    puiseux_arith,
    puiseux_divide,
    rf,
    tropicalize,
    val,
)


# ----------------------------------------------------- rational functions ---


def test_canonical_string_examples():
    d1, z1, z2, z3 = rf("d1"), rf("z1"), rf("z2"), rf("z3")
    assert str(d1 * z2 / (z1 * z3)) == "d1*z2/(z1*z3)"
    assert str(z1 + z2 / z3) == "(z1*z3 + z2)/z3"
    assert str(rf(Fraction(3, 4))) == "3/4"
    assert str(rf(0)) == "0"
    assert str((z1 ** 2 - z2 ** 2) / (z1 - z2)) == "z1 + z2"


def test_variable_order_is_name_then_index():
    e = rf("z10") * rf("z2") * rf("d1")
    assert str(e) == "d1*z2*z10"


def test_equality_is_value_based():
    z1, z2 = rf("z1"), rf("z2")
    assert (z1 ** 2 - z2 ** 2) / (z1 + z2) == z1 - z2
    assert z1 != z2
    assert z1 * 0 == 0
    assert z1 / z1 == 1


def test_mixed_fraction_arithmetic():
    z = rf("z")
    assert 2 * z / 2 == z
    assert Fraction(1, 2) * z + Fraction(1, 2) * z == z
    assert (1 + z) - z == 1


def test_division_by_zero_raises():
    z = rf("z")
    with pytest.raises(DivisionByZero):
        z / (z - z)
    with pytest.raises(DivisionByZero):
        1 / rf(0)


def test_substitution_and_evaluation():
    z1, z2 = rf("z1"), rf("z2")
    e = z1 / z2 + 1
    assert e.subs({"z1": rf(4), "z2": rf(2)}) == 3
    assert e.evaluate({"z1": Fraction(4), "z2": Fraction(2)}) == Fraction(3)


def test_power_requires_integer():
    z = rf("z")
    assert z ** -2 == 1 / z ** 2
    with pytest.raises(TypeError):
        z ** Fraction(1, 2)


# -------------------------------------------------------- puiseux series ---


def t_pow(e, c=1):
    return PuiseuxSeries.monomial(Fraction(c), Fraction(e))


def test_puiseux_string_form():
    s = PuiseuxSeries([(Fraction(1, 2), 3), (Fraction(3, 2), 2)],
                      truncation=Fraction(5, 2))
    assert str(s) == "3*t^(1/2) + 2*t^(3/2) + O(t^(5/2))"
    assert str(PuiseuxSeries([(0, 1), (1, -1)])) == "1 - t"
    assert str(PuiseuxSeries.zero()) == "0"


def test_val_examples():
    assert val(t_pow(Fraction(1, 2)) + t_pow(1, 2)) == Fraction(1, 2)
    assert val(PuiseuxSeries.zero()) == TROP_INFINITY
    assert val(t_pow(0, 3) + t_pow(1)) == 0
    with pytest.raises(UnknownValuation):
        val(PuiseuxSeries.zero(truncation=5))


def test_is_positive_examples():
    assert is_positive(t_pow(1) - t_pow(2))
    assert not is_positive(t_pow(0, -2) + t_pow(1))
    assert is_positive(PuiseuxSeries([(3, 1)], truncation=5))
    with pytest.raises(UnknownValuation):
        is_positive(PuiseuxSeries.zero(truncation=5))


def test_arith_examples():
    t = PuiseuxSeries.t()
    assert puiseux_arith(t, t, "add") == t_pow(1, 2)
    assert puiseux_arith(t, t_pow(2), "mul") == t_pow(3)
    one = t_pow(0)
    q = puiseux_divide(one, one + t, truncation=3)
    assert q == PuiseuxSeries([(0, 1), (1, -1), (2, 1)], truncation=3)
    back = q * (one + t)
    equal, certain = back.agrees_with(one)
    assert equal and not certain
    assert back.truncated(3) == one.truncated(3)


def test_division_exact_monomial():
    a = t_pow(3, 6)
    b = t_pow(1, 2)
    assert (a / b) == t_pow(2, 3)
    assert (a / b).is_exact()


def test_division_requires_truncation():
    one = t_pow(0)
    t = PuiseuxSeries.t()
    with pytest.raises(TruncationRequired):
        puiseux_divide(one, one + t)


def test_division_by_zero_series():
    with pytest.raises(DivisionByZero):
        puiseux_divide(t_pow(1), PuiseuxSeries.zero())
    with pytest.raises(UnknownValuation):
        puiseux_divide(t_pow(1), PuiseuxSeries.zero(truncation=2))


def test_truncation_propagates_pessimistically():
    a = PuiseuxSeries([(0, 1)], truncation=2)
    b = PuiseuxSeries([(1, 1)], truncation=10)
    assert (a + b).truncation == 2
    assert (a * b).truncation == 3  # min(2 + 1, 10 + 0)


rational_exponents = st.fractions(min_value=Fraction(-3), max_value=Fraction(4),
                                  max_denominator=6)
coeffs = st.fractions(min_value=Fraction(-9), max_value=Fraction(9),
                      max_denominator=7).filter(lambda q: q != 0)


@st.composite
def exact_series(draw, min_terms=0):
    pairs = draw(st.lists(st.tuples(rational_exponents, coeffs),
                          min_size=min_terms, max_size=5,
                          unique_by=lambda p: p[0]))
    return PuiseuxSeries(pairs)


@given(a=exact_series(min_terms=1), b=exact_series(min_terms=1))
@settings(max_examples=60, deadline=None)
def test_val_is_multiplicative(a, b):
    assume((a * b).terms)
    assert val(a * b).value == val(a).value + val(b).value


@given(a=exact_series(min_terms=1), b=exact_series(min_terms=1))
@settings(max_examples=60, deadline=None)
def test_val_of_sum_bounded(a, b):
    s = a + b
    lo = min(val(a).value, val(b).value)
    if s.terms:
        assert val(s).value >= lo
        if val(a).value != val(b).value:
            assert val(s).value == lo


@st.composite
def positive_series(draw):
    lead_e = draw(rational_exponents)
    lead_c = draw(coeffs.map(abs))
    rest = draw(st.lists(st.tuples(rational_exponents.filter(lambda e: e > lead_e),
                                   coeffs), max_size=3,
                         unique_by=lambda p: p[0]))
    return PuiseuxSeries([(lead_e, lead_c)] + rest)


@given(a=positive_series(), b=positive_series())
@settings(max_examples=60, deadline=None)
def test_positive_series_form_a_semifield(a, b):
    assert is_positive(a + b)
    assert is_positive(a * b)
    q = puiseux_divide(a, b, truncation=val(a).value - val(b).value + 3)
    assert is_positive(q)


@given(a=exact_series(min_terms=1), b=positive_series())
@settings(max_examples=40, deadline=None)
def test_division_round_trip(a, b):
    tr = val(a).value - val(b).value + 4
    q = puiseux_divide(a, b, truncation=tr)
    equal, _ = (q * b).agrees_with(a)
    assert equal


# ------------------------------------------------------------- tropical ---


def test_trop_value_semantics():
    assert TropValue(2) + TropValue(3) == TropValue(5)
    assert TropValue(2) + TROP_INFINITY == TROP_INFINITY
    assert TropValue.min(TropValue(2), TropValue(3)) == TropValue(2)
    assert TropValue.min(TROP_INFINITY, TropValue(3)) == TropValue(3)
    assert TropValue(Fraction(1, 2)) == Fraction(1, 2)


def _forms(coords, *vecs_and_lams):
    return TropExpr(coords, [AffineForm(tuple(v), lam) for v, lam in vecs_and_lams])


def test_tropicalize_examples():
    z1, z2, z3 = rf("z1"), rf("z2"), rf("z3")
    zero0 = LamForm.constant(0, 0)
    e = tropicalize(z1 + z2 / z3, ("z1", "z2", "z3"))
    # min{z1, z2 - z3}; TropExpr compares as a set of affine forms
    assert e == _forms(("z1", "z2", "z3"),
                       ((1, 0, 0), zero0), ((0, 1, -1), zero0))
    assert e.evaluate({"z1": 5, "z2": 1, "z3": 3}) == TropValue(-2)
    assert e.fmt() == "min{z2 - z3, z1}"  # forms sorted by coefficient vector

    b1, b2, t = rf("b1"), rf("b2"), rf("t")
    e2 = tropicalize(b1 + b2 + t ** 3 / (b1 * b2), ("b1", "b2"),
                     t_exponents={"t": LamForm.constant(1, 0)})
    # min{b1, b2, 3 - b1 - b2}
    assert e2 == _forms(("b1", "b2"),
                        ((1, 0), zero0), ((0, 1), zero0),
                        ((-1, -1), LamForm.constant(3, 0)))
    assert e2.evaluate({"b1": 1, "b2": 1}) == TropValue(1)

    assert tropicalize(rf(1), ("x",)).fmt() == "min{0}"


def test_tropicalize_with_weight_parameters():
    d1, d2, z = rf("d1"), rf("d2"), rf("z")
    lam = {"d1": LamForm.unit(1, 2), "d2": LamForm.unit(2, 2)}
    e = tropicalize(d1 / (d2 * z), ("z",), t_exponents=lam, n_lambda=2)
    assert e.evaluate({"z": Fraction(1, 3)}, lam=(5, 2)) == TropValue(Fraction(8, 3))


def test_tropicalize_rejects_subtraction():
    z1, z2 = rf("z1"), rf("z2")
    with pytest.raises(NotSubtractionFree):
        tropicalize(z1 - z2, ("z1", "z2"))


def test_tropicalize_rejects_sum_denominator():
    z1, z2 = rf("z1"), rf("z2")
    with pytest.raises(NonMonomialDenominator):
        tropicalize(1 / (z1 + z2), ("z1", "z2"))


@given(vals=st.tuples(*[st.fractions(min_value=Fraction(1, 5), max_value=5,
                                     max_denominator=8)] * 3))
@settings(max_examples=40, deadline=None)
def test_val_commutes_with_tropicalization(vals):
    # evaluate a subtraction-free Laurent expression on positive monomials
    # t^{v_i}; the valuation of the result is the tropicalization at v
    z1, z2, z3 = rf("z1"), rf("z2"), rf("z3")
    expr = z1 * z2 + z3 / z1 + z2 ** 2 * z3
    trop = tropicalize(expr, ("z1", "z2", "z3"))
    series = expr.evaluate({"z1": PuiseuxSeries.t(vals[0]),
                            "z2": PuiseuxSeries.t(vals[1]),
                            "z3": PuiseuxSeries.t(vals[2])})
    assert val(series) == trop.evaluate(dict(zip(("z1", "z2", "z3"), vals)))


def test_lam_form_formatting():
    f = LamForm.unit(1, 3) - LamForm.unit(2, 3)
    assert f.fmt(("l1", "l2", "l3")) == "l1 - l2"
    assert (LamForm.constant(Fraction(3, 2), 2)
            + LamForm.unit(2, 2).scaled(-1)).fmt(("a", "b")) == "-b + 3/2"
