from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from quildeg.errors import ZeroSeries
from quildeg.series import (SeriesExpr, add, degree_at_one, expand, format_series, mul,
                            normalize, numeric_degree, parse_series, pole_order, shift)


def oracle_expand(num, weights, D):
    """Convolve the numerator with partition counts for the weights."""
    def count(d, ws):
        if not ws:
            return 1 if d == 0 else 0
        w, rest = ws[0], ws[1:]
        return sum(count(d - k * w, rest) for k in range(d // w + 1))
    parts = [count(d, list(weights)) for d in range(D + 1)]
    return [sum(num[i] * parts[d - i] for i in range(min(d, len(num) - 1) + 1))
            for d in range(D + 1)]


def root_mult_by_derivatives(num):
    """Multiplicity of t=1 as a root: first nonvanishing derivative at 1."""
    coeffs = list(num)
    m = 0
    while coeffs and sum(coeffs) == 0:
        coeffs = [i * c for i, c in enumerate(coeffs)][1:]
        m += 1
    return m


@pytest.mark.parametrize("num,weights,D,want", [
    ((1,), (1,), 3, [1, 1, 1, 1]),
    ((1, 1), (2,), 4, [1, 1, 1, 1, 1]),
    ((1, 0, -1), (1, 1), 3, [1, 2, 2, 2]),
])
def test_expand_examples(num, weights, D, want):
    assert oracle_expand(num, weights, D) == want
    assert expand(SeriesExpr(num, weights), D) == want


def test_expand_zero_numerator():
    assert expand(SeriesExpr((), (1, 2)), 3) == [0, 0, 0, 0]


@pytest.mark.parametrize("num,weights,want", [
    ((1,), (1, 1, 1), 3),
    ((1, 0, -2, 1), (1, 1), 1),
    ((1, -1), (1,), 0),
])
def test_pole_order_examples(num, weights, want):
    assert len(weights) - root_mult_by_derivatives(num) == want
    assert pole_order(SeriesExpr(num, weights)) == want


def test_pole_order_can_be_negative():
    assert pole_order(SeriesExpr((1, -2, 1), ())) == -2
    assert degree_at_one(SeriesExpr((1, -2, 1), ())) == 1


@pytest.mark.parametrize("num,weights,want", [
    ((1,), (1,), Fraction(1)),
    ((1, 2, 2, 1), (4,), Fraction(3, 2)),
    ((1, 0, -1), (1, 1, 2), Fraction(1)),
])
def test_degree_examples(num, weights, want):
    s = SeriesExpr(num, weights)
    assert degree_at_one(s) == want
    assert abs(numeric_degree(s) - want) < Fraction(1, 1000)


def test_zero_series_rejected():
    with pytest.raises(ZeroSeries):
        pole_order(SeriesExpr((), (1,)))
    with pytest.raises(ZeroSeries):
        degree_at_one(SeriesExpr((0, 0), ()))


def test_mul_examples():
    assert mul(SeriesExpr((1,), (1,)), SeriesExpr((1,), (1,))) == SeriesExpr((1,), (1, 1))
    assert mul(SeriesExpr((1, 1), ()), SeriesExpr((1,), (2,))) == SeriesExpr((1, 1), (2,))
    a, b = SeriesExpr((1, 0, -1), (1, 1)), SeriesExpr((1,), (1,))
    assert pole_order(a) == 1 and pole_order(b) == 1
    assert pole_order(mul(a, b)) == 2


def test_add_examples():
    one = SeriesExpr((1,), (1,))
    assert expand(add(one, one), 5) == [2] * 6
    assert normalize(add(one, SeriesExpr((-1,), (1,)))).is_zero()
    assert expand(add(one, SeriesExpr((1,), (2,))), 5) == [2, 1, 2, 1, 2, 1]


def test_shift_examples():
    s = SeriesExpr((1,), (1,))
    assert shift(s, 0) == s
    assert expand(shift(s, 2), 4) == [0, 0, 1, 1, 1]
    assert degree_at_one(shift(SeriesExpr((1, 2, 2, 1), (4,)), 5)) == Fraction(3, 2)


def test_normalize_cancels_smallest_weight_first():
    s = normalize(SeriesExpr((1, 0, -1), (1, 1, 2)))
    assert s == SeriesExpr((1, 1), (1, 2))


def test_text_roundtrip():
    s = SeriesExpr((1, 0, -1), (2, 1, 1))
    assert format_series(s) == "num: [1, 0, -1]; den: [1, 1, 2]"
    assert parse_series(format_series(s)) == s


def test_weights_must_be_positive():
    with pytest.raises(ValueError):
        SeriesExpr((1,), (0,))


def test_from_terms():
    assert SeriesExpr.from_terms({0: 1, 3: -1}, [3]) == SeriesExpr((1, 0, 0, -1), (3,))


series_st = st.builds(
    SeriesExpr,
    st.lists(st.integers(-5, 5), min_size=1, max_size=6).map(tuple),
    st.lists(st.integers(1, 4), max_size=4).map(tuple),
).filter(lambda s: not s.is_zero())

nonneg_st = st.builds(
    SeriesExpr,
    st.lists(st.integers(0, 5), min_size=1, max_size=6).map(tuple),
    st.lists(st.integers(1, 4), max_size=4).map(tuple),
).filter(lambda s: not s.is_zero())


@given(series_st, st.integers(0, 25))
def test_normalize_preserves_expansion(s, D):
    assert expand(normalize(s), D) == expand(s, D)


@given(series_st, st.integers(0, 15))
def test_expand_matches_oracle(s, D):
    assert expand(s, D) == oracle_expand(s.numerator, s.denom_weights, D)


@given(series_st, series_st)
def test_pole_and_degree_multiplicative(a, b):
    assert pole_order(mul(a, b)) == pole_order(a) + pole_order(b)
    assert degree_at_one(mul(a, b)) == degree_at_one(a) * degree_at_one(b)


@given(series_st, st.integers(0, 10))
def test_shift_keeps_degree(s, k):
    assert degree_at_one(shift(s, k)) == degree_at_one(s)


@given(nonneg_st)
def test_nonnegative_series_have_positive_degree(s):
    assert degree_at_one(s) > 0


@given(series_st, series_st, st.integers(0, 12))
def test_add_is_coefficientwise(a, b, D):
    assert expand(add(a, b), D) == [x + y for x, y in zip(expand(a, D), expand(b, D))]


@settings(max_examples=50)
@given(nonneg_st)
def test_numeric_cross_check(s):
    assert abs(numeric_degree(s) - degree_at_one(s)) <= Fraction(1, 1000)
