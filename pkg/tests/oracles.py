"""Independent reference computations shared by the tests.

Everything here uses ``fractions.Fraction`` and ``math`` only, so it shares
no code path with the package.
"""

from fractions import Fraction
from math import comb, factorial


def weight(N, alpha, c, k):
    den = Fraction(1)
    for j in range(k):
        den *= 1 - alpha + j
    return comb(N, k) * Fraction(c) ** k / den


def moment(N, alpha, c, j):
    return sum(Fraction(k) ** j * weight(N, alpha, c, k) for k in range(N + 1))


def det(rows):
    m = [list(r) for r in rows]
    n = len(m)
    out = Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if m[r][i] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            m[i], m[piv] = m[piv], m[i]
            out = -out
        out *= m[i][i]
        for r in range(i + 1, n):
            f = m[r][i] / m[i][i]
            for col in range(i, n):
                m[r][col] -= f * m[i][col]
    return out


def hankel_coefficients(N, alpha, c):
    """``(a_sq[0..N+1], b[0..N])`` from Hankel determinants of the moments."""
    mu = [moment(N, alpha, c, j) for j in range(2 * N + 4)]

    def D(n):
        if n == 0:
            return Fraction(1)
        return det([[mu[i + j] for j in range(n)] for i in range(n)])

    def Dp(n):
        # last column shifted by one: gives minus the x^{n-1} coefficient of the monic p_n
        if n == 0:
            return Fraction(0)
        return det([[mu[i + j] for j in range(n - 1)] + [mu[i + n]] for i in range(n)])

    Ds = [D(n) for n in range(N + 3)]
    a_sq = [Fraction(0)] + [Ds[n + 1] * Ds[n - 1] / Ds[n] ** 2 for n in range(1, N + 2)]
    b = [Dp(n + 1) / Ds[n + 1] - Dp(n) / Ds[n] for n in range(N + 1)]
    return a_sq, b


def binomial(N, k):
    if not 0 <= k <= N:
        return 0
    return Fraction(factorial(N), factorial(k) * factorial(N - k))


def laguerre_recurrence(N, beta, z):
    """Three-term recurrence for L_n^(beta)."""
    prev, cur = Fraction(1), 1 + Fraction(beta) - z
    if N == 0:
        return prev
    for n in range(1, N):
        prev, cur = cur, ((2 * n + 1 + beta - z) * cur - (n + beta) * prev) / (n + 1)
    return cur
