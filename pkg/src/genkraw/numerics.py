"""Arithmetic kernel shared by every module.

Two arithmetic modes are supported:

* ``EXACT``: rationals (``gmpy2.mpq``), always in lowest terms with a
  positive denominator.
* ``float_mode(P)``: mpmath floats at ``P`` bits, round-to-nearest, each
  precision with its own private mpmath context.

Functions in this package are written against plain arithmetic operators,
so they run in either mode; the mode only matters where values enter
(``Mode.convert``) and leave (``Mode.render``).
"""

from __future__ import annotations

import functools
import os
from fractions import Fraction
from numbers import Integral
from typing import Sequence

import gmpy2
import mpmath
from mpmath.libmp.libmpf import repr_dps

__all__ = [
    "DEFAULT_PREC",
    "EXACT",
    "ExactMode",
    "FloatMode",
    "ModeError",
    "PoleError",
    "binomial",
    "central_difference",
    "convergence_ratios",
    "float_mode",
    "is_exact",
    "mode_of",
    "pochhammer",
    "to_float",
]

PREC_ENV = "GENKRAW_PREC"
DEFAULT_PREC = int(os.environ.get(PREC_ENV, "512"))

_MPQ = type(gmpy2.mpq())
_MPZ = type(gmpy2.mpz())
_MPF = mpmath.ctx_mp_python._mpf


class ModeError(TypeError):
    """Values from different arithmetic modes met in one computation."""


class PoleError(ZeroDivisionError):
    """Evaluation at a pole of a rational expression."""


class ExactMode:
    name = "exact"
    tag = "exact"

    def convert(self, value):
        if isinstance(value, _MPQ):
            return value
        if isinstance(value, (Integral, _MPZ, Fraction)):
            return gmpy2.mpq(value)
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, float):
            raise ModeError("python floats are not accepted in exact mode; pass a string or rational")
        if isinstance(value, _MPF):
            raise ModeError("cannot mix a float-mode value into exact mode")
        raise TypeError(f"cannot convert {value!r} to an exact rational")

    def parse(self, text: str):
        """Parse ``"p/q"``, an integer, or a finite decimal such as ``"0.8"``."""
        text = text.strip()
        try:
            return gmpy2.mpq(text)
        except ValueError:
            # gmpy2 rejects exponent notation; Fraction handles "1e-3"
            return gmpy2.mpq(Fraction(text))

    def render(self, value) -> str:
        return str(self.convert(value))

    def __repr__(self) -> str:
        return "EXACT"


class FloatMode:
    """Big-float arithmetic at a fixed number of bits."""

    name = "float"

    def __init__(self, prec: int):
        if prec < 2:
            raise ValueError("precision must be at least 2 bits")
        self.prec = prec
        self.ctx = mpmath.MPContext()
        self.ctx.prec = prec
        self.tag = f"float:{prec}"

    def convert(self, value):
        ctx = self.ctx
        if isinstance(value, ctx.mpf):
            return value
        if isinstance(value, _MPF):
            raise ModeError(f"value belongs to another float context; expected {self.tag}")
        if isinstance(value, (Integral, _MPZ)):
            return ctx.mpf(int(value))
        if isinstance(value, (_MPQ, Fraction)):
            return ctx.mpf(int(value.numerator)) / int(value.denominator)
        if isinstance(value, str):
            return self.parse(value)
        if isinstance(value, float):
            return ctx.mpf(value)
        raise TypeError(f"cannot convert {value!r} to {self.tag}")

    def parse(self, text: str):
        text = text.strip()
        if "/" in text:
            return self.convert(EXACT.parse(text))
        return self.ctx.mpf(text)

    def render(self, value, digits: int | None = None) -> str:
        value = self.convert(value)
        n = digits if digits is not None else repr_dps(self.prec)
        return self.ctx.nstr(value, n, strip_zeros=False, min_fixed=-5, max_fixed=8)

    def sqrt(self, value):
        return self.ctx.sqrt(value)

    def __repr__(self) -> str:
        return f"float_mode({self.prec})"


EXACT = ExactMode()


@functools.lru_cache(maxsize=None)
def float_mode(prec: int = DEFAULT_PREC) -> FloatMode:
    """Return the (shared) float mode at ``prec`` bits."""
    return FloatMode(prec)


def mode_of(value):
    """Arithmetic mode a value belongs to."""
    if isinstance(value, (_MPQ, _MPZ, Integral, Fraction)):
        return EXACT
    if isinstance(value, _MPF):
        return float_mode(value.context.prec)
    raise TypeError(f"{value!r} is not a scalar")


def is_exact(value) -> bool:
    return mode_of(value) is EXACT


def to_float(value, prec: int = DEFAULT_PREC):
    """Round ``value`` once into ``float_mode(prec)``."""
    if isinstance(value, _MPF):
        return float_mode(prec).ctx.mpf(value)
    return float_mode(prec).convert(value)


def pochhammer(a, n: int):
    """Rising factorial ``a (a+1) ... (a+n-1)``; 1 for ``n == 0``."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    out = a - a + 1
    for j in range(n):
        out = out * (a + j)
    if isinstance(out, int):
        return gmpy2.mpq(out)
    return out


def binomial(N: int, k: int):
    """Exact binomial coefficient, zero outside ``0 <= k <= N``."""
    if k < 0 or k > N:
        return gmpy2.mpq(0)
    return gmpy2.mpq(gmpy2.comb(N, k))


def central_difference(values: Sequence, h, order: int, accuracy: int = 2):
    """Central finite-difference derivative at the middle of an odd-length grid.

    ``accuracy=2`` uses the three middle values, ``accuracy=4`` the five
    middle values.
    """
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    need = {2: 3, 4: 5}.get(accuracy)
    if need is None:
        raise ValueError("accuracy must be 2 or 4")
    if len(values) < need or len(values) % 2 == 0:
        raise ValueError(f"need an odd number (>= {need}) of equispaced values, got {len(values)}")
    if not h > 0:
        raise ValueError("h must be positive")
    mid = len(values) // 2
    if accuracy == 2:
        fm, f0, fp = values[mid - 1], values[mid], values[mid + 1]
        if order == 1:
            return (fp - fm) / (2 * h)
        return (fp - 2 * f0 + fm) / (h * h)
    f2m, fm, f0, fp, f2p = values[mid - 2 : mid + 3]
    if order == 1:
        return (f2m - 8 * fm + 8 * fp - f2p) / (12 * h)
    return (-f2m + 16 * fm - 30 * f0 + 16 * fp - f2p) / (12 * h * h)


def convergence_ratios(errors: Sequence) -> list:
    """Successive ratios ``|e_k| / |e_{k+1}|`` along a refinement ladder."""
    return [abs(a) / abs(b) for a, b in zip(errors, errors[1:])]
