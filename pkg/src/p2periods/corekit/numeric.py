"""
Arbitrary precision complex numbers with explicit per-value precision.

Every value carries its own working precision in bits.  Arithmetic
between values of different precision runs at the larger one, so
nothing is silently rounded to a smaller context.  Each precision gets
its own ``mpmath`` context, never the global one.
"""

from fractions import Fraction
from functools import lru_cache

import mpmath


@lru_cache(maxsize=None)
def context(prec):
    """An isolated mpmath context working at ``prec`` bits."""
    ctx = mpmath.MPContext()
    ctx.prec = prec
    return ctx


class BigComplex:
    """Complex number ``re + i*im`` at ``prec`` bits."""

    __slots__ = ("value", "prec")

    def __init__(self, value, prec):
        ctx = context(prec)
        if isinstance(value, BigComplex):
            value = value.value
        if isinstance(value, Fraction):
            value = ctx.mpf(value.numerator) / value.denominator
        object.__setattr__(self, "value", ctx.mpc(value))
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, name, value):
        raise AttributeError("BigComplex is immutable")

    @property
    def ctx(self):
        return context(self.prec)

    @property
    def real(self):
        return self.value.real

    @property
    def imag(self):
        return self.value.imag

    def _lift(self, other):
        if isinstance(other, BigComplex):
            p = max(self.prec, other.prec)
            return p, other.value
        if isinstance(other, Fraction):
            ctx = context(self.prec)
            return self.prec, ctx.mpf(other.numerator) / other.denominator
        return self.prec, other

    def _op(self, other, fn):
        p, o = self._lift(other)
        ctx = context(p)
        a = ctx.mpc(self.value)
        b = ctx.mpc(o)
        return BigComplex(fn(a, b), p)

    def __add__(self, other):
        return self._op(other, lambda a, b: a + b)

    __radd__ = __add__

    def __sub__(self, other):
        return self._op(other, lambda a, b: a - b)

    def __rsub__(self, other):
        return self._op(other, lambda a, b: b - a)

    def __mul__(self, other):
        return self._op(other, lambda a, b: a * b)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._op(other, lambda a, b: a / b)

    def __rtruediv__(self, other):
        return self._op(other, lambda a, b: b / a)

    def __neg__(self):
        return BigComplex(-self.value, self.prec)

    def __pow__(self, n):
        ctx = self.ctx
        return BigComplex(ctx.power(self.value, n), self.prec)

    def __abs__(self):
        return abs(self.value)

    def exp(self):
        return BigComplex(self.ctx.exp(self.value), self.prec)

    def log(self):
        return BigComplex(self.ctx.log(self.value), self.prec)

    def sqrt(self):
        return BigComplex(self.ctx.sqrt(self.value), self.prec)

    def __complex__(self):
        return complex(self.value)

    def __repr__(self):
        digits = max(5, int(self.prec * 0.30103))
        return f"BigComplex({mpmath.nstr(self.value, digits)}, prec={self.prec})"


def pi(prec):
    return BigComplex(context(prec).pi, prec)


def iota(prec):
    """2*pi*i at ``prec`` bits."""
    ctx = context(prec)
    return BigComplex(ctx.mpc(0, 2 * ctx.pi), prec)
