"""Ground-truth recurrence coefficients straight from the weight.

The Stieltjes procedure is run on monic polynomials held as value vectors
on the lattice {0..N}, so everything stays rational in exact mode.
"""

from __future__ import annotations

from dataclasses import dataclass

from .weight import WeightParams, kummer_m_terminating, weights


@dataclass(frozen=True)
class JacobiCoefficients:
    """``a_sq[0..N+1]`` (squared off-diagonal) and ``b[0..N]`` (diagonal)."""

    a_sq: tuple
    b: tuple

    def __post_init__(self):
        if len(self.a_sq) != len(self.b) + 1:
            raise ValueError("a_sq must have exactly one more entry than b")

    @property
    def N(self) -> int:
        return len(self.b) - 1

    def rows(self):
        """``(n, a_n^2, b_n)`` for n = 0..N+1; ``b`` is None in the last row."""
        for n, a in enumerate(self.a_sq):
            yield n, a, (self.b[n] if n < len(self.b) else None)

    def violations(self) -> list[str]:
        """Structural invariants that fail, as human readable strings."""
        N = self.N
        out = []
        if self.a_sq[0] != 0:
            out.append("a_0^2 != 0")
        if self.a_sq[N + 1] != 0:
            out.append("a_{N+1}^2 != 0")
        for n in range(1, N + 1):
            if not self.a_sq[n] > 0:
                out.append(f"a_{n}^2 <= 0")
        for n, bn in enumerate(self.b):
            if not 0 < bn < N:
                out.append(f"b_{n} outside (0, N)")
        if sum(self.b) != N * (N + 1) // 2:
            out.append("trace sum(b) != 0+1+...+N")
        return out


def moments(p: WeightParams, j: int):
    """``mu_j = sum_k k^j w(k)``."""
    return sum((k**j * wk for k, wk in enumerate(weights(p))), p.mode.convert(0))


def _inner(f, g, w):
    total = w[0] - w[0]
    for fk, gk, wk in zip(f, g, w):
        total += fk * gk * wk
    return total


def stieltjes_basis(p: WeightParams):
    """Run the monic Stieltjes recursion.

    Returns ``(coefficients, polys)`` where ``polys[n]`` is the value vector
    of the monic ``pi_n`` on 0..N, for n = 0..N+1.
    """
    N = p.N
    w = weights(p)
    zero = w[0] - w[0]
    prev = [zero] * (N + 1)
    cur = [w[0]] * (N + 1)  # pi_0 == 1 in the mode of the weight
    polys = [cur]
    a_sq = [zero]
    b = []
    prev_norm = None
    for n in range(N + 1):
        norm = _inner(cur, cur, w)
        if norm == 0:
            raise RuntimeError(f"<pi_{n}, pi_{n}> vanished before n = N+1; the measure is not positive")
        if n > 0:
            a_sq.append(norm / prev_norm)
        bn = sum((k * cur[k] * cur[k] * w[k] for k in range(N + 1)), zero) / norm
        b.append(bn)
        an = a_sq[n]
        prev, cur = cur, [(k - bn) * cur[k] - an * prev[k] for k in range(N + 1)]
        polys.append(cur)
        prev_norm = norm
    # pi_{N+1} vanishes on the support, so the last ratio is zero by definition
    a_sq.append(zero)
    return JacobiCoefficients(tuple(a_sq), tuple(b)), polys


def stieltjes(p: WeightParams) -> JacobiCoefficients:
    return stieltjes_basis(p)[0]


def hankel_b0(p: WeightParams):
    """``b_0`` twice: as ``mu_1/mu_0`` and by the Kummer-function closed form."""
    N, alpha, c = p.N, p.alpha, p.c
    ratio = moments(p, 1) / moments(p, 0)
    closed = (c * N / (1 - alpha)) * kummer_m_terminating(N - 1, 2 - alpha, -c) / kummer_m_terminating(
        N, 1 - alpha, -c
    )
    return ratio, closed
