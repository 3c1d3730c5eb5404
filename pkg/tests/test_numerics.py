from fractions import Fraction

import gmpy2
import mpmath
import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from genkraw.numerics import (
    EXACT,
    ModeError,
    binomial,
    central_difference,
    convergence_ratios,
    float_mode,
    is_exact,
    mode_of,
    pochhammer,
    to_float,
)


def test_exact_convert_accepts_rationals_and_rejects_floats():
    assert EXACT.convert(Fraction(3, 4)) == gmpy2.mpq(3, 4)
    assert EXACT.convert("-7/2") == Fraction(-7, 2)
    assert EXACT.convert(5) == 5
    with pytest.raises(ModeError):
        EXACT.convert(0.5)
    with pytest.raises(ModeError):
        EXACT.convert(mpmath.mpf(1))


def test_exact_parse_decimal_and_scientific():
    assert EXACT.parse("0.8") == Fraction(4, 5)
    assert EXACT.parse("1e-3") == Fraction(1, 1000)
    assert EXACT.parse("1e-100") == Fraction(1, 10**100)


@given(st.fractions())
def test_exact_render_parse_roundtrip(q):
    assert EXACT.parse(EXACT.render(EXACT.convert(q))) == q


def test_float_mode_is_cached_and_tagged():
    m = float_mode(80)
    assert m is float_mode(80)
    assert m.tag == "float:80"
    assert m.prec == 80


def test_float_mode_rejects_foreign_precision():
    a, b = float_mode(64), float_mode(128)
    with pytest.raises(ModeError):
        a.convert(b.convert(1))


def test_float_convert_does_not_pass_through_double():
    m = float_mode(200)
    third = m.convert(gmpy2.mpq(1, 3))
    assert abs(third * 3 - 1) < m.convert(2) ** -190


def test_mode_of_and_is_exact():
    assert mode_of(gmpy2.mpq(1, 2)) is EXACT
    assert is_exact(3)
    m = float_mode(72)
    assert mode_of(m.convert(1)) is m
    assert not is_exact(m.convert(1))


def test_to_float_rounds_once():
    m = float_mode(300)
    v = to_float(gmpy2.mpq(1, 3), 300)
    assert mode_of(v) is m
    assert abs(3 * v - 1) < m.convert(2) ** -290


@given(st.integers(0, 30), st.integers(-3, 33))
def test_binomial_matches_factorial_oracle(N, k):
    assert binomial(N, k) == oracles.binomial(N, k)


@given(st.builds(Fraction, st.integers(-400, 400), st.integers(1, 50)), st.integers(0, 12))
def test_pochhammer_matches_product(a, n):
    expected = Fraction(1)
    for j in range(n):
        expected *= a + j
    assert pochhammer(EXACT.convert(a), n) == expected


def test_pochhammer_int_returns_rational():
    assert pochhammer(3, 0) == 1
    assert pochhammer(3, 4) == 3 * 4 * 5 * 6
    assert isinstance(pochhammer(1, 3), type(gmpy2.mpq()))


def test_pochhammer_keeps_float_mode():
    m = float_mode(128)
    assert mode_of(pochhammer(m.convert("1/2"), 3)) is m


def test_central_difference_polynomials_exact():
    h = gmpy2.mpq(1, 7)
    xs = [2 + k * h for k in (-1, 0, 1)]
    assert central_difference([x * x for x in xs], h, 2) == 2
    assert central_difference([x * x for x in xs], h, 1) == 4
    # x^3: first derivative carries the h^2 error term exactly
    assert central_difference([x**3 for x in xs], h, 1) == 12 + h * h


def test_central_difference_fourth_order_exact_on_quartic():
    h = gmpy2.mpq(1, 5)
    xs = [1 + k * h for k in range(-2, 3)]
    assert central_difference([x**4 for x in xs], h, 1, accuracy=4) == 4
    assert central_difference([x**4 for x in xs], h, 2, accuracy=4) == 12


def test_central_difference_orders_on_exp():
    m = float_mode(200)
    ctx = m.ctx

    def err(h, accuracy):
        pts = [ctx.exp(k * h) for k in range(-2, 3)]
        return abs(central_difference(pts, h, 1, accuracy) - 1)

    hs = [ctx.mpf(2) ** -k for k in range(4, 9)]
    r2 = convergence_ratios([err(h, 2) for h in hs])
    r4 = convergence_ratios([err(h, 4) for h in hs])
    assert all(3.9 < r < 4.1 for r in r2)
    assert all(15.5 < r < 16.5 for r in r4)


def test_central_difference_validation():
    with pytest.raises(ValueError):
        central_difference([1, 2], 1, 1)
    with pytest.raises(ValueError):
        central_difference([1, 2, 3], 0, 1)
    with pytest.raises(ValueError):
        central_difference([1, 2, 3], 1, 3)
    with pytest.raises(ValueError):
        central_difference([1, 2, 3], 1, 1, accuracy=4)


def test_convergence_ratios():
    assert convergence_ratios([8, 2, -1]) == [4, 2]
