r"""
Truncated power and Laurent series over a generic coefficient ring.

A series is stored as ``var``, the lowest exponent ``val``, a tuple of
coefficients for ``var**val, var**(val+1), ...`` and the exclusive
truncation ``order``.  ``order=None`` marks an exact (finite) series,
which is how polynomials are represented.

Coefficients only need ``+``, ``-``, ``*``, comparison with ``0`` and,
for division, ``1/c`` of the lowest coefficient.  Coefficients may
themselves be series in another variable; mixing a series with an
object that is not a series in the same variable treats that object as
a scalar.

Precision rules.  Sums keep the minimum of the two orders.  Products
and quotients keep the minimum *relative* precision: if ``a`` is known
to ``O(u**Na)`` with valuation ``va`` (likewise ``b``) then ``a*b`` is
known to ``O(u**min(Na+vb, Nb+va))``.  For two series with valuation
zero this is exactly the minimum of the orders.
"""

from fractions import Fraction


class SeriesError(ArithmeticError):
    """Raised on valuation violations and reads past truncation."""


class NonInvertibleError(SeriesError):
    """Raised when dividing by a series without invertible leading term."""


def _is_zero(c):
    return c == 0


def _omin(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _oadd(a, k):
    return None if a is None else a + k


class TruncatedSeries:
    """Immutable truncated Laurent series ``sum c_k var**k + O(var**order)``.

    Parameters
    ----------
    var : str
        Name of the variable.
    coeffs : sequence
        Coefficients starting at exponent ``val``.
    val : int
        Exponent of ``coeffs[0]``.
    order : int or None
        Exclusive truncation order, ``None`` for an exact series.
    """

    __slots__ = ("var", "val", "coeffs", "order")

    def __init__(self, var, coeffs=(), val=0, order=None):
        coeffs = list(coeffs)
        if order is not None:
            keep = max(0, order - val)
            coeffs = coeffs[:keep]
        lo = 0
        while lo < len(coeffs) and _is_zero(coeffs[lo]):
            lo += 1
        hi = len(coeffs)
        while hi > lo and _is_zero(coeffs[hi - 1]):
            hi -= 1
        coeffs = coeffs[lo:hi]
        if coeffs:
            val = val + lo
        else:
            val = order if order is not None else 0
        object.__setattr__(self, "var", var)
        object.__setattr__(self, "val", val)
        object.__setattr__(self, "coeffs", tuple(coeffs))
        object.__setattr__(self, "order", order)

    def __setattr__(self, name, value):
        raise AttributeError("TruncatedSeries is immutable")

    # construction helpers

    @classmethod
    def from_dict(cls, var, terms, order=None):
        """Build from ``{exponent: coefficient}``."""
        terms = {k: v for k, v in terms.items() if not _is_zero(v)}
        if order is not None:
            terms = {k: v for k, v in terms.items() if k < order}
        if not terms:
            return cls(var, (), 0, order)
        lo, hi = min(terms), max(terms)
        zero = 0 * next(iter(terms.values()))
        return cls(var, [terms.get(k, zero) for k in range(lo, hi + 1)], lo, order)

    @classmethod
    def monomial(cls, var, k, c=1, order=None):
        return cls(var, [c], k, order)

    @classmethod
    def zero(cls, var, order=None):
        return cls(var, (), 0, order)

    # basic queries

    @property
    def is_exact(self):
        return self.order is None

    def is_zero(self):
        return not self.coeffs

    @property
    def degree(self):
        """Largest exponent carrying a nonzero coefficient (None if zero)."""
        if not self.coeffs:
            return None
        return self.val + len(self.coeffs) - 1

    def __getitem__(self, k):
        if self.order is not None and k >= self.order:
            raise SeriesError(
                f"coefficient of {self.var}^{k} requested past truncation order {self.order}")
        i = k - self.val
        if not self.coeffs or i < 0 or i >= len(self.coeffs):
            return 0
        return self.coeffs[i]

    coeff = __getitem__

    def items(self):
        """Nonzero ``(exponent, coefficient)`` pairs."""
        return [(self.val + i, c) for i, c in enumerate(self.coeffs) if not _is_zero(c)]

    def to_dict(self):
        return dict(self.items())

    def truncate(self, order):
        if self.order is not None and order > self.order:
            raise SeriesError(f"cannot extend order {self.order} to {order}")
        return TruncatedSeries(self.var, self.coeffs, self.val, order)

    def map(self, fn):
        """Apply ``fn`` to every coefficient."""
        return TruncatedSeries(self.var, [fn(c) for c in self.coeffs], self.val, self.order)

    def shift(self, k):
        """Multiply by ``var**k``."""
        return TruncatedSeries(self.var, self.coeffs, self.val + k, _oadd(self.order, k))

    def _rel(self):
        # relative precision, None when exact
        if self.order is None:
            return None
        return self.order - self.val

    def _same(self, other):
        return isinstance(other, TruncatedSeries) and other.var == self.var

    def _scalar(self, c):
        return TruncatedSeries(self.var, [c], 0, None)

    # ring operations

    def __neg__(self):
        return TruncatedSeries(self.var, [-c for c in self.coeffs], self.val, self.order)

    def __pos__(self):
        return self

    def __add__(self, other):
        if not self._same(other):
            if _is_zero(other):
                return self
            other = TruncatedSeries(self.var, [other], 0, None)
        order = _omin(self.order, other.order)
        if not self.coeffs:
            return TruncatedSeries(self.var, other.coeffs, other.val, order)
        if not other.coeffs:
            return TruncatedSeries(self.var, self.coeffs, self.val, order)
        lo = min(self.val, other.val)
        hi = max(self.val + len(self.coeffs), other.val + len(other.coeffs))
        if order is not None:
            hi = min(hi, order)
        out = []
        for k in range(lo, hi):
            i, j = k - self.val, k - other.val
            a = self.coeffs[i] if 0 <= i < len(self.coeffs) else None
            b = other.coeffs[j] if 0 <= j < len(other.coeffs) else None
            if a is None:
                out.append(b if b is not None else 0)
            elif b is None:
                out.append(a)
            else:
                out.append(a + b)
        return TruncatedSeries(self.var, out, lo, order)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not self._same(other):
            if isinstance(other, int) and other == 1:
                return self
            return TruncatedSeries(self.var, [c * other for c in self.coeffs], self.val, self.order)
        ra, rb = self._rel(), other._rel()
        if not self.coeffs or not other.coeffs:
            if (not self.coeffs and self.order is None) or (not other.coeffs and other.order is None):
                return TruncatedSeries(self.var, (), 0, None)
            va = self.val if self.coeffs else self.order
            vb = other.val if other.coeffs else other.order
            order = _omin(_oadd(self.order, vb), _oadd(other.order, va))
            return TruncatedSeries(self.var, (), 0, order)
        rel = _omin(ra, rb)
        val = self.val + other.val
        order = _oadd(rel, val)
        na, nb = len(self.coeffs), len(other.coeffs)
        n = na + nb - 1
        if rel is not None:
            n = min(n, rel)
        out = []
        A, B = self.coeffs, other.coeffs
        for k in range(n):
            s = None
            for i in range(max(0, k - nb + 1), min(k, na - 1) + 1):
                a = A[i]
                if _is_zero(a):
                    continue
                b = B[k - i]
                if _is_zero(b):
                    continue
                s = a * b if s is None else s + a * b
            out.append(0 if s is None else s)
        return TruncatedSeries(self.var, out, val, order)

    def __rmul__(self, other):
        if self._same(other):
            return other.__mul__(self)
        return TruncatedSeries(self.var, [other * c for c in self.coeffs], self.val, self.order)

    def inverse(self, order=None):
        """Multiplicative inverse; ``order`` caps the result for exact inputs."""
        if not self.coeffs:
            raise NonInvertibleError(f"series in {self.var} is zero to order {self.order}")
        rel = self._rel()
        if rel is None:
            if order is None:
                if len(self.coeffs) == 1:
                    return TruncatedSeries(self.var, [_inv(self.coeffs[0])], -self.val, None)
                raise NonInvertibleError("inverse of a non-monomial exact series needs an order")
            rel = order + self.val
        c0 = self.coeffs[0]
        try:
            inv0 = _inv(c0)
        except (ZeroDivisionError, ArithmeticError, TypeError) as exc:
            raise NonInvertibleError(f"leading coefficient {c0!r} is not invertible") from exc
        A = self.coeffs
        out = [inv0]
        for k in range(1, rel):
            s = None
            for i in range(1, min(k, len(A) - 1) + 1):
                if _is_zero(A[i]):
                    continue
                term = A[i] * out[k - i]
                s = term if s is None else s + term
            out.append(0 if s is None else -(s * inv0))
        return TruncatedSeries(self.var, out, -self.val, rel - self.val)

    def __truediv__(self, other):
        if not self._same(other):
            if isinstance(other, int):
                other = Fraction(other)
            inv = _inv(other)
            return TruncatedSeries(self.var, [c * inv for c in self.coeffs], self.val, self.order)
        if not other.coeffs:
            raise NonInvertibleError(f"division by a zero series in {other.var}")
        if other.order is None and self.order is None:
            if len(other.coeffs) == 1:
                return self * other.inverse()
            raise NonInvertibleError("exact division by a non-monomial needs a truncation order")
        if other.order is None:
            rel = self.order - self.val
            inv = other.inverse(order=rel - other.val)
        else:
            inv = other.inverse()
        return self * inv

    def __rtruediv__(self, other):
        return TruncatedSeries(self.var, [other], 0, None) / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = None
        base = self
        while n:
            if n & 1:
                result = base if result is None else result * base
            n >>= 1
            if n:
                base = base * base
        if result is None:
            return self._scalar(1)
        return result

    def __eq__(self, other):
        if self._same(other):
            d = self - other
            return d.is_zero()
        if isinstance(other, TruncatedSeries):
            return False
        if _is_zero(other):
            return self.is_zero()
        return (self - other).is_zero()

    __hash__ = None

    def __bool__(self):
        return not self.is_zero()

    # calculus

    def derivative(self):
        """d/dvar."""
        out = [(self.val + i) * c for i, c in enumerate(self.coeffs)]
        return TruncatedSeries(self.var, out, self.val - 1, _oadd(self.order, -1))

    def euler(self):
        """var * d/dvar."""
        out = [(self.val + i) * c for i, c in enumerate(self.coeffs)]
        return TruncatedSeries(self.var, out, self.val, self.order)

    def compose(self, g):
        """Substitute ``g`` for the variable.

        ``g`` must have positive valuation; the result is a series in
        ``g.var``.  Negative exponents of ``self`` are allowed.
        """
        if not isinstance(g, TruncatedSeries):
            raise SeriesError("compose expects a series")
        if not g.coeffs:
            raise SeriesError("cannot compose with a zero series")
        vg = g.val
        if vg <= 0:
            raise SeriesError(f"compose needs positive valuation, got {vg}")
        cap = None if self.order is None else self.order * vg
        result = TruncatedSeries(g.var, (), 0, cap)
        if not self.coeffs:
            return result
        gpow = g ** self.val
        for i, c in enumerate(self.coeffs):
            k = self.val + i
            if cap is not None and k * vg >= cap:
                break
            if not _is_zero(c):
                result = result + gpow * c
            gpow = gpow * g
        return result

    def revert(self):
        """Compositional inverse ``h`` with ``self(h(u)) = u``."""
        if not self.coeffs or self.val != 1:
            raise SeriesError("revert needs a series c*u + O(u^2) with c invertible")
        if self.order is None:
            raise SeriesError("revert needs a truncated series")
        n = self.order
        c = self.coeffs[0]
        inv = _inv(c)
        u = TruncatedSeries(self.var, [1], 1, n)
        h = TruncatedSeries(self.var, [inv], 1, n)
        rest = self - TruncatedSeries(self.var, [c], 1, None)
        # h = (u - rest(h)) / c gains one correct coefficient per pass
        for _ in range(max(0, n - 2)):
            h = (u - rest.compose(h)) * inv
        return TruncatedSeries(self.var, h.coeffs, h.val, n)

    # display

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            parts = []
            for k, c in self.items():
                if k == 0:
                    parts.append(f"{c}")
                elif k == 1:
                    parts.append(f"({c})*{self.var}")
                else:
                    parts.append(f"({c})*{self.var}^{k}")
            body = " + ".join(parts)
        if self.order is not None:
            body += f" + O({self.var}^{self.order})"
        return body


def _inv(c):
    if isinstance(c, int):
        return Fraction(1, c)
    return 1 / c


def binomial_series(var, alpha, order):
    """``(1 + var)**alpha`` for rational ``alpha``."""
    alpha = Fraction(alpha)
    out = [Fraction(1)]
    for k in range(1, order):
        out.append(out[-1] * (alpha - k + 1) / k)
    return TruncatedSeries(var, out, 0, order)


def exp_series(f, order=None):
    """``exp(f)`` for ``f`` with positive valuation."""
    if f.coeffs and f.val <= 0:
        raise SeriesError("exp needs positive valuation")
    n = f.order if order is None else _omin(order, f.order)
    if n is None:
        raise SeriesError("exp of an exact series needs an order")
    result = TruncatedSeries(f.var, [1], 0, n)
    term = TruncatedSeries(f.var, [1], 0, n)
    for k in range(1, n):
        term = term * f * Fraction(1, k)
        if term.is_zero():
            break
        result = result + term
    return result


__all__ = ["TruncatedSeries", "SeriesError", "NonInvertibleError", "binomial_series",
           "exp_series"]
