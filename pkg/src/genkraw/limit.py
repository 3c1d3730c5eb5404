"""Degeneration to the classical Krawtchouk weight.

Taking ``alpha = -s`` and ``c = s p/(1-p)`` keeps ``-c/alpha = p/(1-p)``
fixed; as ``s -> oo`` the coefficients approach the binomial-weight ones.
"""

from __future__ import annotations

import logging

from . import dpsystem, moments
from .numerics import EXACT
from .weight import WeightParams

log = logging.getLogger(__name__)

METHODS = {"dpsystem": dpsystem.trajectory, "stieltjes": moments.stieltjes}


def krawtchouk_exact(N: int, p, n: int):
    """``(a_n^2, b_n)``; ``b_n`` is None for n = N+1."""
    if isinstance(p, str):
        p = EXACT.parse(p)
    if not 0 <= n <= N + 1:
        raise ValueError(f"n={n} outside 0..N+1")
    a_sq = n * p * (1 - p) * (N + 1 - n)
    b = p * (N - n) + n * (1 - p) if n <= N else None
    return a_sq, b


def krawtchouk_table(N: int, p):
    rows = [krawtchouk_exact(N, p, n) for n in range(N + 2)]
    return moments.JacobiCoefficients(tuple(r[0] for r in rows), tuple(r[1] for r in rows[:-1]))


def embed(N: int, p, s) -> WeightParams:
    p, s = EXACT.convert(p), EXACT.convert(s)
    if not 0 < p < 1:
        raise ValueError("p must lie in (0, 1)")
    if not s > 0:
        raise ValueError("s must be positive")
    return WeightParams(N, -s, s * p / (1 - p))


def relative_gap(j: moments.JacobiCoefficients, ref: moments.JacobiCoefficients):
    """Max relative deviation over a_1^2..a_N^2 and b_0..b_N."""
    N = ref.N
    pairs = [(j.a_sq[n], ref.a_sq[n]) for n in range(1, N + 1)] + list(zip(j.b, ref.b))
    return max(abs(v - r) / abs(r) for v, r in pairs)


def limit_deviation(N: int, p, s, method: str = "dpsystem"):
    """Exact max relative deviation from the classical coefficients at scale s."""
    gen = METHODS[method](embed(N, p, s))
    return relative_gap(gen, krawtchouk_table(N, EXACT.convert(p)))


def deviation_ladder(N: int, p, scales=(250, 500, 1000, 2000, 4000), method: str = "dpsystem") -> dict:
    devs = [limit_deviation(N, p, s, method) for s in scales]
    ratios = [float(a / b) for a, b in zip(devs, devs[1:])]
    log.info("classical-limit deviation ratios per doubling for N=%d, p=%s: %s", N, p, ratios)
    return {"s": list(scales), "deviation": devs, "ratio": ratios}
