"""Painleve V certification of the y_n trajectories.

The Painleve function y(c) is not integrated; it is recovered algebraically
from the neighbouring values y_{n-1}, y_n, y_{n+1} through the two shift
relations, and y'(c) follows from the y_n transformation (linear in y').
The differential equations are then checked with central differences on
an exact rational c-grid (or z-grid for the Cosgrove form, c = z^2).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
import mpmath

from . import dpsystem
from .numerics import ModeError, central_difference, convergence_ratios, float_mode, mode_of, to_float
from .weight import WeightParams

log = logging.getLogger(__name__)

P5_PREC = 256


class SingularPointError(ValueError):
    """y sits at 0 or 1, where the Painleve V coefficients blow up."""


@dataclass(frozen=True)
class P5Params:
    A: object
    B: object
    C: object
    D: object


@dataclass(frozen=True)
class P5Sample:
    c: object
    y: object
    y_prime: object

    def __post_init__(self):
        if self.y == 0 or self.y == 1:
            raise SingularPointError(f"y = {self.y} at c = {self.c}")


def p5_params(n: int, N: int, alpha) -> P5Params:
    half = gmpy2.mpq(1, 2) if mode_of(alpha).name == "exact" else mode_of(alpha).convert("0.5")
    return P5Params(
        A=(alpha - N - 1) ** 2 * half,
        B=-((n - N) ** 2) * half,
        C=-(n + alpha),
        D=-half,
    )


def _float_params(p: WeightParams) -> WeightParams:
    if p.exact:
        raise ModeError("the Painleve pipeline runs in float mode; use p.to_mode(float_mode(P))")
    return p


def _shift_up(p, n, y, y_n):
    """y_{n+1} in terms of (y, y_n)."""
    N, alpha = p.N, p.alpha
    return -(1 + N + N * y * y_n) * (N - n + (1 + N - alpha + N * y_n) * y) / (N * (N - n + (1 + n + N * y_n) * y))


def _shift_down(p, n, y, y_n):
    """y_{n-1} in terms of (y, y_n)."""
    N, alpha, c = p.N, p.alpha, p.c
    q = 1 + c + N - alpha + N * y_n
    r = 1 + N - alpha + N * y_n
    big_p = (N + 1) * c + N * (c - n + 2 + 2 * N - alpha + N * y_n + (n - 2 * N - 2 + alpha - N * y_n) * y) * y_n
    return (q - r * y) * big_p / (N * (y - 1) * (n * c + N * (q - r * y) * y_n))


def recover_y_candidates(p: WeightParams, n: int, y_n, y_np1, y_nm1) -> list:
    """Roots of the y_{n+1} relation (a quadratic in y), each with its y_{n-1} mismatch."""
    p = _float_params(p)
    conv = p.mode.convert
    y_n, y_np1, y_nm1 = conv(y_n), conv(y_np1), conv(y_nm1)
    N, alpha = p.N, p.alpha
    if not 1 <= n <= N - 1:
        raise ValueError(f"n={n} outside 1..N-1")
    q2 = N * y_n * (1 + N - alpha + N * y_n)
    q1 = (1 + N) * (1 + N - alpha + N * y_n) + N * y_n * (N - n) + N * y_np1 * (1 + n + N * y_n)
    q0 = (N - n) * (1 + N + N * y_np1)
    if q2 == 0:
        if q1 == 0:
            raise ValueError("y_{n+1} relation degenerates; no root")
        roots = [-q0 / q1]
    else:
        disc = q1 * q1 - 4 * q2 * q0
        if disc < 0:
            raise ValueError(f"no real root (discriminant {mpmath.nstr(disc, 8)})")
        if disc == 0:
            roots = [-q1 / (2 * q2)]
        else:
            d = p.mode.sqrt(disc)
            # avoid cancellation: q = -(q1 + sign(q1) d)/2, roots q/q2 and q0/q
            q = -(q1 + d) / 2 if q1 >= 0 else -(q1 - d) / 2
            roots = [q / q2, q0 / q]
    out = []
    for y in roots:
        try:
            mismatch = abs(_shift_down(p, n, y, y_n) - y_nm1)
        except ZeroDivisionError:
            mismatch = p.mode.ctx.inf
        out.append((y, mismatch))
    return out


def recover_y(p: WeightParams, n: int, y_n, y_np1, y_nm1, tol=None, strict: bool = True):
    """The Painleve V value y(c) consistent with both shift relations.

    With ``strict=False`` the root with the smaller y_{n-1} mismatch is
    returned even when neither passes (used for negative controls).
    """
    cands = recover_y_candidates(p, n, y_n, y_np1, y_nm1)
    if not strict:
        return min(cands, key=lambda cv: cv[1])[0]
    scale = 1 + abs(p.mode.convert(y_nm1))
    tol = p.mode.convert(2) ** (-(p.mode.prec // 2)) * scale if tol is None else tol
    passing = [cv for cv in cands if cv[1] <= tol]
    if not passing:
        raise ValueError(
            "no root of the y_{n+1} relation reproduces y_{n-1}: "
            + ", ".join(mpmath.nstr(m, 5) for _, m in cands)
        )
    if len(passing) > 1:
        log.warning("both roots pass the y_{n-1} cross-check at n=%d; keeping the closer one", n)
    return min(passing, key=lambda cv: cv[1])[0]


def recover_y_prime(p: WeightParams, n: int, y, y_n):
    """Solve the y_n transformation for y'."""
    N, alpha, c = p.N, p.alpha, p.c
    if y == 0 or y == 1:
        raise SingularPointError(f"y = {y}")
    return (N - n + y * (1 + n + c - alpha + (alpha - N - 1) * y) - 2 * N * (y - 1) * y * y_n) / c


def forward_y_n(p: WeightParams, n: int, s: P5Sample):
    N, alpha, c = p.N, p.alpha, s.c
    y, yp = s.y, s.y_prime
    return (N - n + y * (1 + n + c - alpha + (alpha - N - 1) * y) - c * yp) / (2 * N * (y - 1) * y)


def forward_x_n(p: WeightParams, n: int, s: P5Sample):
    N, alpha, c = p.N, p.alpha, s.c
    y, yp = s.y, s.y_prime
    a1 = (1 + N - alpha) ** 2
    a2 = 2 * (1 + N - alpha) * (1 + c + N - alpha)
    a3 = (1 + c + n - alpha) * (1 + c - n + 2 * N - alpha)
    num = (c * yp + n - N) ** 2 - 2 * (n - N) * (n - N + c * yp) * y - a1 * y**4 + a2 * y**3 - a3 * y**2
    return num / (4 * c * N * (y - 1) * y**2)


def y_n_prime(p: WeightParams, x_n, y_n):
    """dy_n/dc from the pair (x_n, y_n)."""
    N, alpha, c = p.N, p.alpha, p.c
    return x_n + y_n + y_n * (N + 1 + N * y_n) * (N + 1 - alpha + N * y_n) / (c * N * (x_n + y_n))


def x_n_prime(p: WeightParams, n: int, x_n, y_n):
    """dx_n/dc from the pair (x_n, y_n)."""
    N, alpha, c = p.N, p.alpha, p.c
    g = N * x_n - n
    return g / c * (-x_n - y_n + x_n * (N * x_n - N - 1) * (alpha - N - 1 + N * x_n) / (N * g * (x_n + y_n)))


def p5_rhs(params5: P5Params, c, y, yp):
    A, B, C, D = params5.A, params5.B, params5.C, params5.D
    return (
        (1 / (2 * y) + 1 / (y - 1)) * yp**2
        - yp / c
        + (y - 1) ** 2 / c**2 * (A * y + B / y)
        + C * y / c
        + D * y * (y + 1) / (y - 1)
    )


def p5_residual(params5: P5Params, samples, via: str = "y_prime"):
    """``y'' - RHS`` at the middle of three equispaced samples.

    ``via="y_prime"`` differentiates the y' values, ``via="y"`` takes the
    second difference of y.
    """
    if len(samples) != 3:
        raise ValueError("need samples at c-h, c, c+h")
    lo, mid, hi = samples
    mode = mode_of(mid.y)
    params5 = P5Params(*(mode.convert(v) for v in (params5.A, params5.B, params5.C, params5.D)))
    c = mode.convert(mid.c)
    h = (mode.convert(hi.c) - mode.convert(lo.c)) / 2
    if abs((c - mode.convert(lo.c)) - h) > abs(h) * mode.convert(2) ** (-(mode.prec // 2)):
        raise ValueError("samples must be equispaced in c")
    if via == "y_prime":
        ypp = central_difference([s.y_prime for s in samples], h, 1)
    elif via == "y":
        ypp = central_difference([s.y for s in samples], h, 2)
    else:
        raise ValueError("via must be 'y_prime' or 'y'")
    return ypp - p5_rhs(params5, c, mid.y, mid.y_prime)


def cosgrove_coefficients(n: int, N: int, alpha):
    a1 = 4 * (2 * alpha - 4 * N + 6 * n - 1)
    b1 = 2 * (2 * n + 1) * (6 * n - 8 * N - 5) + 8 * (2 * n + 1) * alpha - 8 * alpha**2
    g1 = 4 * (2 * alpha - 4 * N + 2 * n - 3) * (4 * n * n + 4 * n + 1 - 4 * alpha**2)
    return a1, b1, g1


def cosgrove_residual(n: int, N: int, alpha, y_n_values, z0, hz, accuracy: int = 2):
    """Second-degree Cosgrove-form residual at ``z0`` from y_n on ``z0 + j hz``, j = -2..2."""
    if len(y_n_values) != 5:
        raise ValueError("need five y_n values on the z-grid")
    if not z0 - 2 * hz > 0:
        raise ValueError("z-grid must stay in z > 0")
    shift = 2 * alpha - 4 * N + 2 * n - 3
    v = [4 * N * yv - shift for yv in y_n_values]
    vp = central_difference(v, hz, 1, accuracy)
    vpp = central_difference(v, hz, 2, accuracy)
    a1, b1, g1 = cosgrove_coefficients(n, N, alpha)
    v0, z = v[2], z0
    return (vpp - 6 * v0**2 - a1 * v0 - b1) ** 2 - (v0 / z - 2 * z) ** 2 * (
        vp**2 - 4 * v0**3 - a1 * v0**2 - 2 * b1 * v0 - g1
    )


# ---------------------------------------------------------------------------
# pipeline: exact trajectories on a grid -> (y, y') -> residuals


def exact_y_values(p: WeightParams, c, states_fn=dpsystem.iterate):
    """Exact ``[y_0, ..., y_N]`` and ``[x_0, ..., x_{N+1}]`` at parameter c."""
    states = states_fn(p.with_c(c))
    return [s.y for s in states[:-1]], [s.x for s in states]


def sample_at(p: WeightParams, n: int, c, prec: int = P5_PREC, tamper=0, states_fn=dpsystem.iterate):
    """P5Sample at c recovered from the exact trajectory.

    ``tamper`` is added to y_n; tampered data skips the y_{n-1} cross-check.
    """
    ys, xs = exact_y_values(p, c, states_fn)
    pf = p.with_c(c).to_mode(float_mode(prec))
    conv = pf.mode.convert
    y_n = conv(ys[n] + tamper)
    y = recover_y(pf, n, y_n, ys[n + 1], ys[n - 1], strict=tamper == 0)
    yp = recover_y_prime(pf, n, y, y_n)
    return P5Sample(pf.c, y, yp), {"y_n": ys[n], "x_n": xs[n], "y_n_float": y_n}


def _near_singular(y, rel=1e-6) -> bool:
    return abs(y) < rel or abs(y - 1) < rel


def p5_convergence(
    p: WeightParams, n: int, hs, prec: int = P5_PREC, tamper=0, via: str = "y_prime", states_fn=dpsystem.iterate
):
    """P5 residuals along the step ladder ``hs`` around ``p.c``.

    ``tamper`` perturbs y_n at the centre only (negative control).
    """
    c0 = p.c
    centre, _ = sample_at(p, n, c0, prec, tamper, states_fn)
    if _near_singular(centre.y):
        c0 = c0 + c0 / 97
        log.info("y within 1e-6 of {0,1} at c=%s; grid shifted to %s", p.c, c0)
        centre, _ = sample_at(p, n, c0, prec, tamper, states_fn)
    params5 = p5_params(n, p.N, p.alpha)
    res = []
    for h in hs:
        lo, _ = sample_at(p, n, c0 - h, prec, states_fn=states_fn)
        hi, _ = sample_at(p, n, c0 + h, prec, states_fn=states_fn)
        res.append(p5_residual(params5, [lo, centre, hi], via))
    return {"c": c0, "h": list(hs), "residual": res, "ratio": convergence_ratios(res)}


def z_centre(c):
    """Rational z0 with z0^2 = c when c is a rational square, else a nearby rational."""
    q = gmpy2.mpq(c)
    if gmpy2.is_square(q.numerator) and gmpy2.is_square(q.denominator):
        return gmpy2.mpq(gmpy2.isqrt(q.numerator), gmpy2.isqrt(q.denominator))
    approx = Fraction(str(mpmath.sqrt(mpmath.mpf(int(q.numerator)) / int(q.denominator)))).limit_denominator(1000)
    return gmpy2.mpq(approx)


def cosgrove_convergence(
    p: WeightParams, n: int, hzs, z0=None, prec: int = P5_PREC, tamper=0, accuracy: int = 2, states_fn=dpsystem.iterate
):
    """Cosgrove-form residuals along the z-step ladder ``hzs`` (exact values, rounded once)."""
    if not p.exact:
        raise ModeError("Cosgrove residuals need exact grid values")
    z0 = z_centre(p.c) if z0 is None else p.mode.convert(z0)
    res = []
    for hz in hzs:
        hz = p.mode.convert(hz)
        vals = []
        for j in range(-2, 3):
            z = z0 + j * hz
            if not z > 0:
                raise ValueError("z-grid crosses z = 0")
            ys, _ = exact_y_values(p, z * z, states_fn)
            vals.append(ys[n] + (tamper if j == 0 else 0))
        res.append(to_float(cosgrove_residual(n, p.N, p.alpha, vals, z0, hz, accuracy), prec))
    return {"z0": z0, "hz": list(hzs), "residual": res, "ratio": convergence_ratios(res)}
