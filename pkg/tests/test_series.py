from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from arfkit.errors import FieldMismatchError, InputError, PrecisionError
from arfkit.series import (
    BeyondPrecision,
    TruncatedSeries,
    add,
    div,
    mul,
    order,
    parse_series,
)


def S(text, T=10, char=0):
    return parse_series(text, T, char)


def dense_product(a, b, T):
    """Schoolbook convolution on dense coefficient lists."""
    ca = [a.coefficient(e) if e < a.truncation else 0 for e in range(T)]
    cb = [b.coefficient(e) if e < b.truncation else 0 for e in range(T)]
    return [sum(ca[i] * cb[n - i] for i in range(n + 1)) for n in range(T)]


class TestOrder:
    def test_least_exponent(self):
        assert order(S("t^2 + t^5")) == 2

    def test_zero_is_sentinel(self):
        o = order(TruncatedSeries.zero(10))
        assert o == BeyondPrecision(10)
        assert str(o) == ">=10"

    def test_constant_term(self):
        assert order(S("3 + t")) == 0

    def test_sentinel_does_not_compare_with_ints(self):
        with pytest.raises(TypeError):
            _ = BeyondPrecision(10) < 3


class TestArithmetic:
    def test_cancellation(self):
        assert add(S("t^2 + t^3"), S("-t^3")) == S("t^2")

    def test_sum(self):
        assert str(add(S("t^4"), S("t^7"))) == "t^4 + t^7"

    def test_additive_identity(self):
        s = S("1/2*t^2 - t^3")
        assert s + TruncatedSeries.zero(10) == s

    def test_truncation_is_min(self):
        assert add(S("t", 5), S("t^2", 9)).truncation == 5
        assert mul(S("t", 5), S("t^2", 9)).truncation == 5

    def test_monomial_product(self):
        assert mul(S("t^2"), S("t^3")) == S("t^5")

    def test_difference_of_squares(self):
        assert mul(S("1 + t"), S("1 - t")) == S("1 - t^2")

    def test_zero_absorbs(self):
        assert mul(TruncatedSeries.zero(10), S("1 + t + t^2")).is_zero

    def test_mismatched_fields(self):
        with pytest.raises(FieldMismatchError):
            add(S("t"), S("t", char=5))

    def test_prime_field_reduction(self):
        s = S("2*t + 3*t^2", char=5) + S("3*t + 2*t^2", char=5)
        assert s.is_zero
        assert S("1/2*t", char=5).coefficient(1) == 3

    def test_power(self):
        assert S("1 + t") ** 3 == S("1 + 3*t + 3*t^2 + t^3")


class TestDivision:
    def test_monomial_divisor(self):
        q = div(S("t^4 + t^7"), S("t^4"))
        assert str(q) == "1 + t^3"
        assert q.truncation == 6

    def test_self_quotient(self):
        assert str(div(S("t^3"), S("t^3"))) == "1"

    @pytest.mark.parametrize("n,m", [(2, 1), (4, 3), (7, 2), (10, 9)])
    def test_shifted_binomial(self, n, m):
        assert div(S(f"t^{n} + t^{n + m}", 40), S(f"t^{n}", 40)) == S(f"1 + t^{m}", 40 - n)

    def test_geometric_series(self):
        q = div(S("1"), S("1 - t"))
        assert q == TruncatedSeries({e: 1 for e in range(10)}, 10)

    def test_leaving_power_series_ring(self):
        with pytest.raises(InputError):
            div(S("t^2"), S("t^3"))

    def test_divide_by_zero_at_precision(self):
        with pytest.raises(PrecisionError):
            div(S("t"), TruncatedSeries.zero(10))


class TestParse:
    @pytest.mark.parametrize("text,expected", [
        ("t^4 + t^7", "t^4 + t^7"),
        ("1/2*t^2 - t^3", "1/2*t^2 - t^3"),
        ("  t^7+t^4 ", "t^4 + t^7"),
        ("-t", "-t"),
        ("3 + 2/4*t", "3 + 1/2*t"),
        ("t + t", "2*t"),
        ("t - t", "0"),
    ])
    def test_canonical_round_trip(self, text, expected):
        assert str(S(text, 20)) == expected
        assert str(S(expected, 20)) == expected

    @pytest.mark.parametrize("bad", ["", "t^", "x^2", "2**", "*t", "t^2 +", "1/0*t"])
    def test_malformed(self, bad):
        with pytest.raises((InputError, ZeroDivisionError)):
            S(bad)

    def test_terms_at_or_beyond_truncation_are_dropped(self):
        assert S("t + t^12", 10) == S("t", 10)

    def test_coefficient_beyond_truncation_is_unknown(self):
        with pytest.raises(PrecisionError):
            S("t", 10).coefficient(10)


small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def series(draw, T=8):
    terms = draw(st.dictionaries(st.integers(0, T - 1), small_rationals, max_size=T))
    return TruncatedSeries(terms, T)


@settings(max_examples=60, deadline=None)
@given(series(), series(), series())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)


@settings(max_examples=60, deadline=None)
@given(series(), series())
def test_product_matches_dense_convolution(a, b):
    p = a * b
    assert [p.coefficient(e) for e in range(8)] == dense_product(a, b, 8)


@settings(max_examples=60, deadline=None)
@given(series(T=12), series(T=12))
def test_order_is_additive(a, b):
    if a.is_zero or b.is_zero or a.order() + b.order() >= 12:
        return
    assert (a * b).order() == a.order() + b.order()


@settings(max_examples=60, deadline=None)
@given(series(T=12), series(T=12))
def test_division_inverts_multiplication(a, b):
    if b.is_zero or a.is_zero:
        return
    q = div(a * b, b)
    assert q.truncation == 12 - b.order()
    assert q.agrees_with(a)
    assert (q * b).agrees_with(a * b)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.integers(0, 6), min_size=1, max_size=6), st.sampled_from([2, 3, 5, 7]))
def test_prime_field_residues_are_canonical(coeffs, p):
    s = TruncatedSeries(dict(enumerate(coeffs)), 8, p)
    assert all(0 < c < p for _, c in s.terms())


def test_values_are_exact_fractions():
    s = S("1/3*t")
    assert isinstance(s.coefficient(1), Fraction)
    assert (s * 3).coefficient(1) == 1
