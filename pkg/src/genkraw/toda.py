"""Toda equations in the parameter c, checked by finite differences.

    d(a_n^2)/dc = a_n^2 (b_n - b_{n-1}) / c
    d(b_n)/dc   = (a_{n+1}^2 - a_n^2) / c

Coefficients on the c-grid are exact rationals; the residual is formed
exactly and rounded once at the end, so only stencil truncation remains.
"""

from __future__ import annotations

from . import dpsystem, moments
from .numerics import DEFAULT_PREC, ModeError, central_difference, convergence_ratios, to_float
from .weight import WeightParams

METHODS = {"dpsystem": dpsystem.trajectory, "stieltjes": moments.stieltjes}


def coefficients_at(p: WeightParams, c, method="dpsystem"):
    """Exact coefficients at parameter c; ``method`` is a name in METHODS or a callable."""
    fn = METHODS[method] if isinstance(method, str) else method
    return fn(p.with_c(c))


def toda_residual(p: WeightParams, n: int, h, accuracy: int = 2, method="dpsystem", prec: int = DEFAULT_PREC):
    """``(res_a, res_b)`` at the middle of the grid ``c + k h``.

    ``accuracy=2`` uses c-h, c, c+h; ``accuracy=4`` adds c-2h, c+2h.
    """
    if not p.exact:
        raise ModeError("Toda residuals need exact grid values")
    if not 1 <= n <= p.N:
        raise ValueError(f"n={n} outside 1..N")
    h = p.mode.convert(h)
    reach = accuracy // 2
    if not h > 0 or not p.c - reach * h > 0:
        raise ValueError("grid must satisfy h > 0 and c - h > 0")
    grid = [coefficients_at(p, p.c + k * h, method) for k in range(-reach, reach + 1)]
    mid = grid[reach]
    c = p.c
    da = central_difference([g.a_sq[n] for g in grid], h, 1, accuracy)
    db = central_difference([g.b[n] for g in grid], h, 1, accuracy)
    res_a = da - mid.a_sq[n] / c * (mid.b[n] - mid.b[n - 1])
    res_b = db - (mid.a_sq[n + 1] - mid.a_sq[n]) / c
    return to_float(res_a, prec), to_float(res_b, prec)


def h_ladder(p: WeightParams, levels=range(4, 11)) -> list:
    """Step sizes ``2^-k c``."""
    return [p.c / 2**k for k in levels]


def toda_convergence(p: WeightParams, n: int, hs=None, accuracy: int = 2, method="dpsystem"):
    """Residual magnitudes along ``hs`` and the successive halving ratios."""
    hs = h_ladder(p, range(4, 9)) if hs is None else hs
    res = [toda_residual(p, n, h, accuracy, method) for h in hs]
    ra = [r[0] for r in res]
    rb = [r[1] for r in res]
    return {"h": hs, "res_a": ra, "res_b": rb, "ratio_a": convergence_ratios(ra), "ratio_b": convergence_ratios(rb)}
