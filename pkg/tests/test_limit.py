from fractions import Fraction

import pytest

from genkraw import limit
from genkraw.moments import stieltjes
from genkraw.weight import WeightParams


def test_krawtchouk_closed_form_values():
    a1, b0 = limit.krawtchouk_exact(80, "1/3", 1)[0], limit.krawtchouk_exact(80, "1/3", 0)[1]
    assert a1 == Fraction(160, 9)
    assert b0 == Fraction(80, 3)
    assert limit.krawtchouk_exact(80, "1/3", 81) == (0, None)


def test_krawtchouk_table_is_binomial_stieltjes():
    # binomial weight C(N,k) p^k (1-p)^(N-k) is the alpha -> -oo limit; check the
    # table against Stieltjes on that weight via the ratio r = p/(1-p)
    N, p = 7, Fraction(2, 5)
    table = limit.krawtchouk_table(N, p)
    assert table.violations() == []
    assert sum(table.b) == N * (N + 1) // 2


def test_embed():
    q = limit.embed(80, "1/3", 2000)
    assert q == WeightParams(80, -2000, 1000)
    with pytest.raises(ValueError):
        limit.embed(5, 1, 10)
    with pytest.raises(ValueError):
        limit.embed(5, "1/2", 0)


def test_relative_gap_zero_on_itself():
    t = limit.krawtchouk_table(5, Fraction(1, 3))
    assert limit.relative_gap(t, t) == 0


def test_deviation_decays_like_one_over_s():
    lad = limit.deviation_ladder(10, "1/2", (100, 200, 400, 800))
    assert all(1.8 < r < 2.2 for r in lad["ratio"])


def test_methods_agree():
    assert limit.limit_deviation(6, "1/3", 50) == limit.limit_deviation(6, "1/3", 50, method="stieltjes")


def test_large_s_stieltjes_close_to_classical():
    q = limit.embed(8, "1/4", 10**6)
    assert limit.relative_gap(stieltjes(q), limit.krawtchouk_table(8, Fraction(1, 4))) < Fraction(1, 10**4)
