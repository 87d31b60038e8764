"""
Exact scalar rings.

* rationals are plain :class:`fractions.Fraction`
* :class:`GaussianRational` is Q(i)
* :class:`IotaLaurent` is Q[iota, 1/iota] with iota = 2*pi*i kept formal
* :class:`Pi2Poly` is Q[pi^2], the target of :func:`project_pi2`
"""

from fractions import Fraction


def as_fraction(x):
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not a rational: {x!r}")


def _is_rational(x):
    return isinstance(x, (int, Fraction))


class GaussianRational:
    """Element ``re + im*i`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_fraction(re))
        object.__setattr__(self, "im", as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x):
        if isinstance(x, GaussianRational):
            return x
        if _is_rational(x):
            return cls(x, 0)
        if isinstance(x, complex):
            return cls(Fraction(x.real), Fraction(x.imag))
        raise TypeError(f"cannot coerce {x!r} to Q(i)")

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self):
        return self.re * self.re + self.im * self.im

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        p = self * o.conjugate()
        return GaussianRational(p.re / n, p.im / n)

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return (1 / self) ** (-n)
        r = GaussianRational(1)
        for _ in range(n):
            r = r * self
        return r

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"


I = GaussianRational(0, 1)


class IotaLaurent:
    """Laurent polynomial in the formal unit iota = 2*pi*i over Q.

    Stored as ``{exponent: Fraction}`` with zero terms dropped.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, v in (terms or {}).items():
            v = as_fraction(v)
            if v != 0:
                clean[int(k)] = v
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("IotaLaurent is immutable")

    @classmethod
    def coerce(cls, x):
        if isinstance(x, IotaLaurent):
            return x
        if _is_rational(x):
            return cls({0: x})
        raise TypeError(f"cannot coerce {x!r} to Q[iota, 1/iota]")

    @classmethod
    def iota(cls, k=1, c=1):
        return cls({k: c})

    def __add__(self, other):
        try:
            o = IotaLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t.get(k, 0) + v
        return IotaLaurent(t)

    __radd__ = __add__

    def __neg__(self):
        return IotaLaurent({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-IotaLaurent.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = IotaLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        t = {}
        for a, x in self.terms.items():
            for b, y in o.terms.items():
                t[a + b] = t.get(a + b, 0) + x * y
        return IotaLaurent(t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = IotaLaurent.coerce(other)
        if len(o.terms) != 1:
            raise ZeroDivisionError("only monomials in iota are invertible")
        (k, v), = o.terms.items()
        return self * IotaLaurent({-k: 1 / v})

    def __rtruediv__(self, other):
        return IotaLaurent.coerce(other) / self

    def __pow__(self, n):
        if n < 0:
            return (1 / self) ** (-n)
        r = IotaLaurent({0: 1})
        for _ in range(n):
            r = r * self
        return r

    def __eq__(self, other):
        try:
            o = IotaLaurent.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{v}*iota^{k}" for k, v in sorted(self.terms.items()))


class Pi2Poly:
    """Polynomial in pi^2 with rational coefficients, ``{k: c}`` for ``c*pi^(2k)``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        for k, v in (terms or {}).items():
            v = as_fraction(v)
            if v != 0:
                clean[int(k)] = v
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Pi2Poly is immutable")

    @classmethod
    def coerce(cls, x):
        if isinstance(x, Pi2Poly):
            return x
        if _is_rational(x):
            return cls({0: x})
        raise TypeError(f"cannot coerce {x!r} to Q[pi^2]")

    def __add__(self, other):
        try:
            o = Pi2Poly.coerce(other)
        except TypeError:
            return NotImplemented
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t.get(k, 0) + v
        return Pi2Poly(t)

    __radd__ = __add__

    def __neg__(self):
        return Pi2Poly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-Pi2Poly.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = Pi2Poly.coerce(other)
        except TypeError:
            return NotImplemented
        t = {}
        for a, x in self.terms.items():
            for b, y in o.terms.items():
                t[a + b] = t.get(a + b, 0) + x * y
        return Pi2Poly(t)

    __rmul__ = __mul__

    def __eq__(self, other):
        try:
            o = Pi2Poly.coerce(other)
        except TypeError:
            return NotImplemented
        return self.terms == o.terms

    def __hash__(self):
        return hash(tuple(sorted(self.terms.items())))

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{v}*pi^{2 * k}" for k, v in sorted(self.terms.items()))


def project_pi2(s):
    """Rewrite an iota-Laurent scalar as a polynomial in pi^2.

    Uses iota^2 = -4 pi^2.  Odd powers of iota mean something upstream
    went wrong, so they raise ``ValueError``; so do negative even powers,
    which leave Q[pi^2].
    """
    if _is_rational(s):
        return Pi2Poly({0: s})
    s = IotaLaurent.coerce(s)
    out = {}
    for k, v in s.terms.items():
        if k % 2:
            raise ValueError(f"odd power iota^{k} survives projection")
        if k < 0:
            raise ValueError(f"negative power iota^{k} is not in Q[pi^2]")
        out[k // 2] = v * Fraction(-4) ** (k // 2)
    return Pi2Poly(out)
