"""Semi-classical Krawtchouk weight ``C(N,k) c^k / (1-alpha)_k`` on {0..N}."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import gmpy2

from .numerics import EXACT, ModeError, PoleError, binomial, pochhammer


@dataclass(frozen=True)
class WeightParams:
    """Lattice size ``N`` and the two real parameters ``alpha < 1``, ``c > 0``.

    ``alpha`` and ``c`` are converted into ``mode`` on construction, so
    ``WeightParams(6, "1/2", 1)`` is an exact parameter set.
    """

    N: int
    alpha: object
    c: object
    mode: object = field(default=EXACT, compare=False)

    def __post_init__(self):
        if isinstance(self.N, bool) or not isinstance(self.N, int):
            raise TypeError("N must be an integer")
        if self.N < 1:
            raise ValueError(f"N must be a positive integer (got N={self.N})")
        object.__setattr__(self, "alpha", self.mode.convert(self.alpha))
        object.__setattr__(self, "c", self.mode.convert(self.c))
        if not self.alpha < 1:
            raise ValueError(f"alpha must be < 1 (got alpha={self.mode.render(self.alpha)})")
        if not self.c > 0:
            raise ValueError(f"c must be > 0 (got c={self.mode.render(self.c)})")

    @property
    def exact(self) -> bool:
        return self.mode is EXACT

    def with_c(self, c) -> "WeightParams":
        return replace(self, c=c)

    def to_mode(self, mode) -> "WeightParams":
        if mode is self.mode:
            return self
        if not self.exact:
            raise ModeError("only exact parameters can be moved to another mode")
        return WeightParams(self.N, mode.convert(self.alpha), mode.convert(self.c), mode)

    def as_dict(self) -> dict:
        return {"N": self.N, "alpha": self.mode.render(self.alpha), "c": self.mode.render(self.c)}


def weights(p: WeightParams) -> list:
    """``[w(0), ..., w(N)]`` by the running ratio ``w(k+1)/w(k)``."""
    N, alpha, c = p.N, p.alpha, p.c
    out = [p.mode.convert(1)]
    for k in range(N):
        out.append(out[-1] * ((N - k) * c) / ((k + 1) * (1 - alpha + k)))
    return out


def weight_at(p: WeightParams, k: int):
    if k < -1 or k > p.N + 1:
        raise ValueError(f"k={k} outside -1..N+1")
    if k in (-1, p.N + 1):
        return p.mode.convert(0)
    return weights(p)[k]


def weight_direct(p: WeightParams, k: int):
    """Closed form ``C(N,k) c^k / (1-alpha)_k``, independent of ``weights``."""
    return p.mode.convert(binomial(p.N, k)) * p.c**k / pochhammer(1 - p.alpha, k)


def potential_u(p: WeightParams, x):
    """``u(x) = -1 + x (x - alpha) / (c (N + 1 - x))``."""
    d = p.c * (p.N + 1 - x)
    if d == 0:
        raise PoleError(f"potential has a pole at x = N+1 = {p.N + 1}")
    return -1 + x * (x - p.alpha) / d


def _promote(v):
    # plain ints would otherwise divide to Python floats
    return gmpy2.mpq(v) if isinstance(v, int) else v


def kummer_m_terminating(m: int, b, z):
    """``M(-m, b, z)`` as the finite sum over s = 0..m."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    b, z = _promote(b), _promote(z)
    term = b - b + 1
    total = term
    for s in range(m):
        den = (b + s) * (s + 1)
        if den == 0:
            raise PoleError(f"(b)_{s + 1} vanishes for b={b}")
        term = term * (s - m) * z / den
        total = total + term
    return total


def laguerre(N: int, beta, z):
    """Generalized Laguerre polynomial ``L_N^(beta)(z)``.

    Uses ``sum_k (-1)^k binom(N+beta, N-k) z^k / k!`` with the generalized
    binomial written as ``(beta+k+1)_{N-k} / (N-k)!``.
    """
    beta, z = _promote(beta), _promote(z)
    total = 0
    for k in range(N + 1):
        term = pochhammer(beta + k + 1, N - k) * z**k / int(gmpy2.fac(N - k) * gmpy2.fac(k))
        total = total - term if k % 2 else total + term
    return total
