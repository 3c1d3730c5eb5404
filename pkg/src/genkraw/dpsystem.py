"""Recurrence coefficients by iterating the coupled discrete system in (x_n, y_n).

With ``x_n = (a_n^2/c + n)/N`` and ``y_n = -(b_n + N + 1 + c - n - alpha)/N``
the pair obeys

    (x_n + y_n)(x_{n+1} + y_n) = -y_n (N+1+N y_n)(N+1-alpha+N y_n) / (c N)
    (x_n + y_n)(x_n + y_{n-1}) = x_n (N x_n-N-1)(N x_n+alpha-N-1) / (N (N x_n - n))

Each step solves the first relation for ``x_{n+1}`` and then the second,
shifted to n+1, for ``y_{n+1}``; both solves are linear.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .moments import JacobiCoefficients
from .weight import WeightParams, kummer_m_terminating


class SingularTrajectoryError(ArithmeticError):
    """A division by zero inside the discrete system."""

    def __init__(self, message: str, n: int, state: "XYState"):
        super().__init__(f"{message} at n={n} (x={state.x}, y={state.y})")
        self.reason = message
        self.n = n
        self.state = state


@dataclass(frozen=True)
class XYState:
    n: int
    x: object
    # undefined at n = N+1, where the second relation has a zero denominator
    y: Optional[object]


@dataclass(frozen=True)
class LadderQuantities:
    n: int
    T: object
    t: object


def y0_closed_form(p: WeightParams):
    N, alpha, c = p.N, p.alpha, p.c
    ratio = kummer_m_terminating(N - 1, 2 - alpha, -c) / kummer_m_terminating(N, 1 - alpha, -c)
    return -(N + 1 + c - alpha) / N - c / (1 - alpha) * ratio


def initial_state(p: WeightParams) -> XYState:
    return XYState(0, p.mode.convert(0), y0_closed_form(p))


def step(p: WeightParams, s: XYState) -> XYState:
    """Advance ``(x_n, y_n)`` to ``(x_{n+1}, y_{n+1})``."""
    N, alpha, c = p.N, p.alpha, p.c
    n, x, y = s.n, s.x, s.y
    if n > N:
        raise ValueError(f"cannot step beyond n = N+1 = {N + 1}")
    if x + y == 0:
        raise SingularTrajectoryError("x_n + y_n = 0", n, s)
    x1 = -y * (N + 1 + N * y) * (N + 1 - alpha + N * y) / (c * N * (x + y)) - y
    if n + 1 == N + 1:
        return XYState(n + 1, x1, None)
    gap = N * x1 - (n + 1)
    if gap == 0:
        raise SingularTrajectoryError("N x_{n+1} = n+1 (vanishing a_{n+1}^2)", n + 1, XYState(n + 1, x1, None))
    if x1 + y == 0:
        raise SingularTrajectoryError("x_{n+1} + y_n = 0", n + 1, XYState(n + 1, x1, None))
    y1 = x1 * (N * x1 - N - 1) * (alpha - N - 1 + N * x1) / (N * gap * (x1 + y)) - x1
    return XYState(n + 1, x1, y1)


def iterate(p: WeightParams, y0=None) -> list[XYState]:
    """States for n = 0..N+1 starting from ``(0, y0)``.

    ``y0`` defaults to the closed form; passing another value is how the
    perturbation and shooting experiments drive the system.
    """
    s = initial_state(p) if y0 is None else XYState(0, p.mode.convert(0), p.mode.convert(y0))
    states = [s]
    for _ in range(p.N + 1):
        s = step(p, s)
        states.append(s)
    return states


def coefficients_from_states(p: WeightParams, states: list[XYState]) -> JacobiCoefficients:
    N, alpha, c = p.N, p.alpha, p.c
    a_sq = tuple(c * (N * s.x - s.n) for s in states)
    b = tuple(-N * s.y - (N + 1 + c - s.n - alpha) for s in states[: N + 1])
    return JacobiCoefficients(a_sq, b)


def states_from_coefficients(p: WeightParams, j: JacobiCoefficients) -> list[XYState]:
    N, alpha, c = p.N, p.alpha, p.c
    out = []
    for n, a, bn in j.rows():
        x = (a / c + n) / N
        y = None if bn is None else -(bn + N + 1 + c - n - alpha) / N
        out.append(XYState(n, x, y))
    return out


def trajectory(p: WeightParams) -> JacobiCoefficients:
    return coefficients_from_states(p, iterate(p))


def system_residuals(p: WeightParams, states: list[XYState], n: int):
    """Residuals of both discrete relations at index n (1 <= n <= N)."""
    N, alpha, c = p.N, p.alpha, p.c
    x, y = states[n].x, states[n].y
    r1 = (x + y) * (states[n + 1].x + y) + y * (N + 1 + N * y) * (N + 1 - alpha + N * y) / (c * N)
    r2 = (x + y) * (x + states[n - 1].y) - x * (-N - 1 + N * x) * (alpha - N - 1 + N * x) / (N * (N * x - n))
    return r1, r2


def ladder_quantities(p: WeightParams, j: JacobiCoefficients, n: int) -> LadderQuantities:
    if not 0 <= n <= p.N:
        raise ValueError(f"n={n} outside 0..N")
    c = p.c
    t = j.a_sq[n] / c + n
    T = (j.b[n] + 1 + c - n - p.alpha) / c
    return LadderQuantities(n, T, t)


def compatibility_residuals(p: WeightParams, j: JacobiCoefficients, n: int, x):
    """Both ladder compatibility relations at abscissa ``x``, multiplied by ``c (N - x)``.

    Uses ``A_n(x)/a_n = (x + c T_n) / (c (N - x))`` and ``B_n(x) = t_n / (N - x)``.
    The cleared residuals are polynomials of degree <= 2 in ``x``.
    """
    N, alpha, c = p.N, p.alpha, p.c
    if not 1 <= n <= N - 1:
        raise ValueError(f"n={n} outside 1..N-1")
    if x == N:
        raise ValueError(f"x = N = {N} is a pole of A_n and B_n")
    lq = [ladder_quantities(p, j, k) for k in range(n + 2)]
    T = [q.T for q in lq]
    t = [q.t for q in lq]
    bn = j.b[n]
    a2, a2next = j.a_sq[n], j.a_sq[n + 1]
    # c (N - x) u(x + 1)
    u_cleared = -c * (N - x) + (x + 1) * (x + 1 - alpha)
    sum_cleared = (n + 1) * x + c * sum(T[: n + 1])
    r1 = c * (t[n] + t[n + 1]) - ((x - bn) * (x + c * T[n]) - u_cleared + sum_cleared)
    T_prev = T[n - 1]
    r2 = (a2next * (x + c * T[n + 1]) - a2 * (x + c * T_prev)) - (
        (x - bn) * c * t[n + 1] - (x + 1 - bn) * c * t[n] + c * (N - x)
    )
    return r1, r2


def sample_abscissae(p: WeightParams, count: int = 4) -> list:
    """Distinct rational abscissae away from the pole ``x = N``."""
    conv = p.mode.convert
    pool = [conv(-5), conv("1/3"), conv(p.N) + conv("7/2"), conv("-13/7"), conv("11/5"), conv("29/3")]
    out = [x for x in pool if x != p.N][:count]
    if len(out) < count:
        raise ValueError(f"at most {len(out)} sample abscissae available")
    return out
