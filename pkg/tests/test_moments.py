from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from genkraw.moments import JacobiCoefficients, hankel_b0, moments, stieltjes, stieltjes_basis
from genkraw.numerics import float_mode
from genkraw.weight import WeightParams, weights

alphas = st.builds(lambda k, d: 1 - Fraction(k, d), st.integers(1, 300), st.integers(1, 12))
cs = st.builds(Fraction, st.integers(1, 300), st.integers(1, 12))


def test_moments_small_example():
    p = WeightParams(2, "1/2", 1)
    assert moments(p, 0) == Fraction(19, 3)
    assert moments(p, 1) == Fraction(20, 3)
    assert moments(p, 2) == 4 + Fraction(16, 3)


def test_two_point_gram_schmidt():
    # equal weights on {0, 1}: p1 = x - 1/2, ||p1||^2/||p0||^2 = 1/4
    j = stieltjes(WeightParams(1, 0, 1))
    assert j.a_sq == (0, Fraction(1, 4), 0)
    assert j.b == (Fraction(1, 2), Fraction(1, 2))


def test_three_point_example():
    j = stieltjes(WeightParams(2, "1/2", 1))
    assert j.a_sq == (0, Fraction(132, 361), Fraction(76, 121), 0)
    assert j.b == (Fraction(20, 19), Fraction(217, 209), Fraction(10, 11))


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6), alphas, cs)
def test_stieltjes_matches_hankel_oracle(N, alpha, c):
    a_sq, b = oracles.hankel_coefficients(N, alpha, c)
    j = stieltjes(WeightParams(N, alpha, c))
    assert list(j.a_sq) == a_sq
    assert list(j.b) == b


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 8), alphas, cs)
def test_basis_is_orthogonal_and_terminates(N, alpha, c):
    p = WeightParams(N, alpha, c)
    _, polys = stieltjes_basis(p)
    w = weights(p)
    assert len(polys) == N + 2
    assert all(v == 0 for v in polys[N + 1])
    for i in range(N + 1):
        for k in range(i):
            assert sum(a * b * wk for a, b, wk in zip(polys[i], polys[k], w)) == 0


@settings(max_examples=20, deadline=None)
@given(st.integers(1, 10), alphas, cs)
def test_structural_invariants(N, alpha, c):
    assert stieltjes(WeightParams(N, alpha, c)).violations() == []


def test_violations_reported():
    j = JacobiCoefficients((1, -1, 1), (Fraction(3, 2), 0))
    v = j.violations()
    assert "a_0^2 != 0" in v and "a_{N+1}^2 != 0" in v and "a_1^2 <= 0" in v
    assert any("b_0" in s for s in v)
    with pytest.raises(ValueError):
        JacobiCoefficients((0, 0), (1, 1))


def test_rows_last_b_is_none():
    rows = list(stieltjes(WeightParams(1, 0, 1)).rows())
    assert rows[-1] == (2, 0, None)


def test_hankel_b0_closed_form():
    ratio, closed = hankel_b0(WeightParams(2, "1/2", 1))
    assert ratio == closed == Fraction(20, 19)
    for args in [(6, "1/2", 1), (20, "4/5", "1/10"), (10, -1, 2)]:
        ratio, closed = hankel_b0(WeightParams(*args))
        assert ratio == closed


def test_float_mode_close_to_exact():
    p = WeightParams(10, -1, 2)
    m = float_mode(200)
    jf = stieltjes(p.to_mode(m))
    je = stieltjes(p)
    for a, e in zip(jf.a_sq[1:-1], je.a_sq[1:-1]):
        assert abs(a - m.convert(e)) < m.convert(2) ** -180 * (1 + abs(m.convert(e)))
