from fractions import Fraction

import gmpy2
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles
from genkraw.numerics import EXACT, ModeError, PoleError, float_mode
from genkraw.weight import (
    WeightParams,
    kummer_m_terminating,
    laguerre,
    potential_u,
    weight_at,
    weight_direct,
    weights,
)

alphas = st.builds(lambda k, d: 1 - Fraction(k, d), st.integers(1, 500), st.integers(1, 20))
cs = st.builds(Fraction, st.integers(1, 500), st.integers(1, 20))
rationals = st.builds(Fraction, st.integers(-300, 300), st.integers(1, 20))


def test_params_validation():
    with pytest.raises(ValueError, match="alpha must be < 1"):
        WeightParams(3, 1, 1)
    with pytest.raises(ValueError, match="c must be > 0"):
        WeightParams(3, 0, 0)
    with pytest.raises(ValueError):
        WeightParams(0, 0, 1)
    with pytest.raises(TypeError):
        WeightParams(2.0, 0, 1)
    with pytest.raises(ModeError):
        WeightParams(3, 0.5, 1)


def test_params_conversion_and_equality():
    p = WeightParams(6, "1/2", 1)
    assert p.alpha == Fraction(1, 2)
    assert p == WeightParams(6, Fraction(1, 2), 1)
    assert p.with_c(2).c == 2
    assert p.as_dict() == {"N": 6, "alpha": "1/2", "c": "1"}


def test_to_mode_one_way():
    m = float_mode(64)
    pf = WeightParams(2, "1/2", 3).to_mode(m)
    assert pf.mode is m and not pf.exact
    with pytest.raises(ModeError):
        pf.to_mode(EXACT)


def test_weights_small_example():
    # N=2, alpha=1/2, c=1: 1, 2*1/(1/2), 1*1/((1/2)(3/2))
    assert weights(WeightParams(2, "1/2", 1)) == [1, 4, Fraction(4, 3)]


def test_weight_at_boundary():
    p = WeightParams(3, -1, 2)
    assert weight_at(p, -1) == 0
    assert weight_at(p, 4) == 0
    with pytest.raises(ValueError):
        weight_at(p, 5)


@settings(max_examples=40)
@given(st.integers(1, 12), alphas, cs)
def test_weights_match_closed_form_and_oracle(N, alpha, c):
    p = WeightParams(N, alpha, c)
    w = weights(p)
    for k in range(N + 1):
        assert w[k] == weight_direct(p, k) == oracles.weight(N, alpha, c, k)


@settings(max_examples=30)
@given(st.integers(1, 10), alphas, cs)
def test_potential_is_log_difference_of_weight(N, alpha, c):
    # u(x) = -(w(x) - w(x-1)) / w(x) on 1..N
    p = WeightParams(N, alpha, c)
    w = weights(p)
    for x in range(1, N + 1):
        assert potential_u(p, x) == -(w[x] - w[x - 1]) / w[x]


def test_potential_pole():
    with pytest.raises(PoleError):
        potential_u(WeightParams(3, 0, 1), 4)


def test_kummer_examples():
    # M(-1, b, z) = 1 - z/b ; M(-2, b, z) = 1 - 2z/b + z^2/(b(b+1))
    b, z = gmpy2.mpq(3, 2), gmpy2.mpq(-2)
    assert kummer_m_terminating(0, b, z) == 1
    assert kummer_m_terminating(1, b, z) == 1 - z / b
    assert kummer_m_terminating(2, b, z) == 1 - 2 * z / b + z * z / (b * (b + 1))
    assert kummer_m_terminating(3, 1, 1) == 1 - 3 + Fraction(3, 2) - Fraction(1, 6)


def test_kummer_pole():
    with pytest.raises(PoleError):
        kummer_m_terminating(3, -1, 1)


def test_laguerre_examples():
    # L_2^(b)(z) = (b+1)(b+2)/2 - (b+2) z + z^2/2
    b, z = gmpy2.mpq(1, 3), gmpy2.mpq(5, 7)
    assert laguerre(2, b, z) == (b + 1) * (b + 2) / 2 - (b + 2) * z + z * z / 2
    assert laguerre(0, b, z) == 1


@settings(max_examples=40)
@given(st.integers(0, 15), rationals, cs)
def test_laguerre_matches_recurrence(N, beta, z):
    assert laguerre(N, EXACT.convert(beta), EXACT.convert(z)) == oracles.laguerre_recurrence(N, beta, z)
