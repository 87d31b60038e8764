r"""
Eisenstein series, the quasi-modular ring and theta constants.

q-expansions are stored as series in the nome ``w = exp(pi i tau)`` so
that ``q = w**2``.  Eisenstein series and the J-invariant only use even
powers of ``w``; theta constants use all of them.  Orders passed to the
public functions are orders in ``q``.

The J-invariant is normalized as ``J = E4^3/(E4^3 - E6^2)``, i.e. the
classical ``j`` divided by 1728.
"""

from fractions import Fraction
from math import isqrt

from .corekit import TruncatedSeries
from .corekit.numeric import BigComplex, context
from .corekit.scalars import IotaLaurent, Pi2Poly, as_fraction, project_pi2

W = "w"

_EIS_FACTOR = {2: -24, 4: 240, 6: -504}


def sigma(k, n):
    """Divisor power sum of ``n``."""
    s = 0
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            e = n // d
            s += d ** k
            if e != d:
                s += e ** k
    return s


def q_series(coeffs, order, val=0):
    """Wrap q-coefficients ``coeffs`` (starting at ``q**val``) as a nome series."""
    terms = {2 * (val + i): Fraction(c) for i, c in enumerate(coeffs)}
    return TruncatedSeries.from_dict(W, terms, 2 * order)


def q_coeff(s, n):
    """Coefficient of ``q**n`` in a nome series."""
    return s[2 * n]


def q_theta(s):
    """q d/dq on a nome series, which is (1/2) w d/dw."""
    return s.euler() * Fraction(1, 2)


def eisenstein(k, order):
    """q-expansion of E_k, k in {2, 4, 6}, to ``O(q**order)``.

    >>> q_coeff(eisenstein(4, 3), 1)
    Fraction(240, 1)
    """
    if k not in _EIS_FACTOR:
        raise ValueError("k must be 2, 4 or 6")
    if order < 1:
        raise ValueError("order must be positive")
    c = _EIS_FACTOR[k]
    return q_series([1] + [c * sigma(k - 1, n) for n in range(1, order)], order)


# ---------------------------------------------------------------------------
# quasi-modular polynomials

class QMPoly:
    """Sparse Laurent polynomial in E2, E4, E6 with iota-Laurent coefficients.

    Keys are ``(i, a, b, c)`` for ``iota^i E2^a E4^b E6^c``; values are
    Fractions.  Negative ``b`` and ``c`` are allowed so that division by
    monomials stays inside the ring; ``a`` is always non-negative.

    With ``unit="pi"`` the first key entry is the power of pi instead of
    iota; that form is produced by :meth:`project_pi2` and is read-only.
    """

    __slots__ = ("terms", "unit", "weight_decl")

    def __init__(self, terms=None, unit="iota", weight=None):
        clean = {}
        for k, v in (terms or {}).items():
            if v != 0:
                clean[k] = as_fraction(v)
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "unit", unit)
        object.__setattr__(self, "weight_decl", weight)
        if weight is not None and clean:
            ws = self.weights()
            if ws != {weight}:
                raise ValueError(f"declared weight {weight} but monomials have weights {sorted(ws)}")

    def __setattr__(self, name, value):
        raise AttributeError("QMPoly is immutable")

    # constructors

    @classmethod
    def const(cls, c, iota=0):
        if isinstance(c, IotaLaurent):
            return cls({(k, 0, 0, 0): v for k, v in c.terms.items()})
        return cls({(iota, 0, 0, 0): c})

    @classmethod
    def mono(cls, a=0, b=0, c=0, coeff=1, iota=0):
        return cls({(iota, a, b, c): coeff})

    @classmethod
    def coerce(cls, x):
        if isinstance(x, QMPoly):
            return x
        if isinstance(x, (int, Fraction, IotaLaurent)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {x!r} to a quasi-modular polynomial")

    # queries

    def weights(self):
        return {2 * a + 4 * b + 6 * c for (_, a, b, c) in self.terms}

    @property
    def weight(self):
        ws = self.weights()
        if len(ws) == 1:
            return ws.pop()
        if not ws:
            return self.weight_decl
        return None

    def is_homogeneous(self):
        return len(self.weights()) <= 1

    def is_polynomial(self):
        return all(b >= 0 and c >= 0 for (_, _, b, c) in self.terms)

    def e6_pole_order(self):
        return max([0] + [-c for (_, _, _, c) in self.terms])

    def e4_pole_order(self):
        return max([0] + [-b for (_, _, b, _) in self.terms])

    def iota_powers(self):
        return {i for (i, _, _, _) in self.terms}

    def is_zero(self):
        return not self.terms

    # arithmetic

    def _check(self, other):
        if other.unit != self.unit:
            raise TypeError("cannot mix iota and pi forms")

    def __add__(self, other):
        try:
            o = QMPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if not o.terms:
            return self
        self._check(o)
        t = dict(self.terms)
        for k, v in o.terms.items():
            t[k] = t.get(k, 0) + v
        return QMPoly(t, self.unit)

    __radd__ = __add__

    def __neg__(self):
        return QMPoly({k: -v for k, v in self.terms.items()}, self.unit)

    def __sub__(self, other):
        return self + (-QMPoly.coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QMPoly({k: v * other for k, v in self.terms.items()}, self.unit)
        try:
            o = QMPoly.coerce(other)
        except TypeError:
            return NotImplemented
        self._check(o)
        t = {}
        for (i1, a1, b1, c1), x in self.terms.items():
            for (i2, a2, b2, c2), y in o.terms.items():
                k = (i1 + i2, a1 + a2, b1 + b2, c1 + c2)
                t[k] = t.get(k, 0) + x * y
        return QMPoly(t, self.unit)

    __rmul__ = __mul__

    def inverse(self):
        """Inverse of a monomial."""
        if len(self.terms) != 1:
            raise ZeroDivisionError("only monomials are invertible in the quasi-modular ring")
        (k, v), = self.terms.items()
        if k[1] != 0:
            raise ZeroDivisionError("E2 is not inverted")
        return QMPoly({(-k[0], 0, -k[2], -k[3]): 1 / v}, self.unit)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * QMPoly.coerce(other).inverse()

    def __rtruediv__(self, other):
        return QMPoly.coerce(other) * self.inverse()

    def __pow__(self, n):
        if n < 0:
            return self.inverse() ** (-n)
        r = QMPoly.const(1)
        b = self
        while n:
            if n & 1:
                r = r * b
            n >>= 1
            if n:
                b = b * b
        return r

    def __eq__(self, other):
        try:
            o = QMPoly.coerce(other)
        except TypeError:
            return NotImplemented
        if not o.terms and not self.terms:
            return True
        return self.unit == o.unit and self.terms == o.terms

    def __hash__(self):
        return hash((self.unit, tuple(sorted(self.terms.items()))))

    # structure

    def derive(self):
        """q d/dq through Ramanujan's equations."""
        return ramanujan_derive(self)

    def project_pi2(self):
        """Rewrite iota^(2k) as (-4)^k pi^(2k); odd powers raise."""
        if self.unit != "iota":
            return self
        t = {}
        for (i, a, b, c), v in self.terms.items():
            p = project_pi2(IotaLaurent({i: v}))
            for k, w in p.terms.items():
                key = (2 * k, a, b, c)
                t[key] = t.get(key, 0) + w
        return QMPoly(t, "pi")

    def coefficient_dict(self):
        """``{(a, b, c): Pi2Poly or IotaLaurent}`` grouped by E-monomial."""
        groups = {}
        for (i, a, b, c), v in self.terms.items():
            groups.setdefault((a, b, c), {})[i] = v
        if self.unit == "pi":
            return {k: Pi2Poly({i // 2: v for i, v in d.items()}) for k, d in groups.items()}
        return {k: IotaLaurent(d) for k, d in groups.items()}

    def to_qseries(self, order):
        return qm_to_qseries(self, order)

    def __repr__(self):
        if not self.terms:
            return "0"
        sym = "iota" if self.unit == "iota" else "pi"
        parts = []
        for (i, a, b, c), v in sorted(self.terms.items(), key=lambda kv: (kv[0][1:], kv[0][0])):
            m = [f"{v}"]
            if i:
                m.append(f"{sym}^{i}")
            for name, e in (("E2", a), ("E4", b), ("E6", c)):
                if e:
                    m.append(name if e == 1 else f"{name}^{e}")
            parts.append("*".join(m))
        return " + ".join(parts)


E2 = QMPoly.mono(a=1)
E4 = QMPoly.mono(b=1)
E6 = QMPoly.mono(c=1)
DELTA = E4 ** 3 - E6 ** 2


def ramanujan_derive(p):
    """Apply D = q d/dq using the product rule and

    D E2 = (E2^2 - E4)/12,  D E4 = (E2 E4 - E6)/3,  D E6 = (E2 E6 - E4^2)/2.
    """
    p = QMPoly.coerce(p)
    t = {}

    def acc(key, v):
        t[key] = t.get(key, 0) + v

    for (i, a, b, c), v in p.terms.items():
        if a:
            f = v * Fraction(a, 12)
            acc((i, a + 1, b, c), f)
            acc((i, a - 1, b + 1, c), -f)
        if b:
            f = v * Fraction(b, 3)
            acc((i, a + 1, b, c), f)
            acc((i, a, b - 1, c + 1), -f)
        if c:
            f = v * Fraction(c, 2)
            acc((i, a + 1, b, c), f)
            acc((i, a, b + 2, c - 1), -f)
    return QMPoly(t, p.unit)


def d_tau(p, k=1):
    """d/dtau = iota * q d/dq, applied ``k`` times."""
    for _ in range(k):
        p = ramanujan_derive(p) * QMPoly.const(1, iota=1)
    return p


def ramanujan_residuals(order):
    """q d/dq E_k minus the Ramanujan right-hand side, as q-series to ``O(q**order)``."""
    out = {}
    for k, Ek in ((2, E2), (4, E4), (6, E6)):
        lhs = q_theta(eisenstein(k, order))
        rhs = qm_to_qseries(ramanujan_derive(Ek), order).truncate(2 * order)
        out[k] = lhs - rhs
    return out


def qm_to_qseries(p, order):
    """Substitute the Eisenstein q-expansions into a quasi-modular polynomial."""
    p = QMPoly.coerce(p)
    if any(i != 0 for i in p.iota_powers()):
        raise ValueError("cannot expand a polynomial with iota coefficients as a rational q-series")
    gens = {2: eisenstein(2, order), 4: eisenstein(4, order), 6: eisenstein(6, order)}
    cache = {}

    def power(k, e):
        key = (k, e)
        if key not in cache:
            cache[key] = gens[k] ** e
        return cache[key]

    total = TruncatedSeries(W, (), 0, 2 * order)
    for (_, a, b, c), v in p.terms.items():
        term = TruncatedSeries(W, [v], 0, None)
        for k, e in ((2, a), (4, b), (6, c)):
            if e:
                term = term * power(k, e)
        total = total + term
    return total


def j_series(order):
    """J = E4^3/(E4^3 - E6^2) as a Laurent nome series to ``O(q**order)``.

    Leading terms are (q^-1 + 744 + 196884 q + ...)/1728.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    n = order + 2
    e4 = eisenstein(4, n)
    e6 = eisenstein(6, n)
    e43 = e4 ** 3
    disc = e43 - e6 * e6
    return (e43 / disc).truncate(2 * order)


def w_to_q(s, var="q"):
    """Re-express an even nome series as an honest series in q."""
    terms = {}
    for k, c in s.items():
        if k % 2:
            raise ValueError("series has odd powers of the nome")
        terms[k // 2] = c
    order = None if s.order is None else (s.order + 1) // 2
    return TruncatedSeries.from_dict(var, terms, order)


def invert_j(order):
    """q as a series in u = 1/x where x = J(q), obtained by series reversion.

    The result is a ``TruncatedSeries`` in ``u`` to ``O(u**order)`` with
    leading term u/1728.
    """
    if order < 1:
        raise ValueError("order must be positive")
    # 1/J = Delta/E4^3 has valuation one in q
    n = order + 1
    e4 = eisenstein(4, n)
    e6 = eisenstein(6, n)
    e43 = e4 ** 3
    inv_j = w_to_q((e43 - e6 * e6) / e43).truncate(order)
    rev = inv_j.revert()
    return TruncatedSeries("u", rev.coeffs, rev.val, rev.order)


def theta_constants(order):
    """Nome expansions of theta_00, theta_01 and theta_10 to ``O(q**order)``.

    theta_10 carries a w^(1/4) prefactor; the returned third series is
    theta_10 / w^(1/4), an honest power series in w.
    """
    if order < 1:
        raise ValueError("order must be positive")
    N = 2 * order
    t00, t01, t10 = {}, {}, {}
    n = 0
    while n * n < N:
        for m in ({n, -n} if n else {0}):
            t00[m * m] = t00.get(m * m, 0) + 1
            t01[m * m] = t01.get(m * m, 0) + (-1) ** (m % 2)
        n += 1
    n = 0
    # (n+1/2)^2 = n^2 + n + 1/4; sum over all integers n
    while n * n + n < N:
        for m in (n, -n - 1):
            e = m * m + m
            t10[e] = t10.get(e, 0) + 1
        n += 1
    mk = lambda d: TruncatedSeries.from_dict(W, {k: Fraction(v) for k, v in d.items()}, N)
    return mk(t00), mk(t01), mk(t10)


def theta_identities(order):
    """Check E4 = (1/2) sum theta^8 and Delta = (27/4) (prod theta)^8 to q-order ``order``."""
    t00, t01, t10r = theta_constants(order)
    w2 = TruncatedSeries.monomial(W, 2)
    t10_8 = w2 * t10r ** 8            # theta_10^8 = w^2 (stripped)^8
    e4 = eisenstein(4, order)
    e6 = eisenstein(6, order)
    lhs1 = (t00 ** 8 + t10_8 + t01 ** 8) * Fraction(1, 2)
    lhs2 = w2 * (t00 * t10r * t01) ** 8 * Fraction(27, 4)
    disc = e4 ** 3 - e6 * e6
    return (lhs1 - e4).is_zero(), (lhs2 - disc).is_zero()


# ---------------------------------------------------------------------------
# numerics

def _nome(tau, prec):
    ctx = context(prec)
    tau = BigComplex(tau, prec)
    if tau.imag <= 0:
        raise ValueError("tau must lie in the upper half plane")
    return ctx, tau, ctx.exp(ctx.mpc(0, ctx.pi) * tau.value)


def _term_budget(tau_imag, prec, ctx, power=2):
    # number of lattice terms before |w|^(n^power) drops under 2^-prec
    lw = ctx.pi * tau_imag
    need = (prec + 10) * ctx.log(2) / lw
    return need


def theta_numeric(tau, prec, max_terms=None):
    """theta_00, theta_01, theta_10 at ``tau`` as BigComplex values."""
    ctx, tau_b, w = _nome(tau, prec)
    need = _term_budget(tau_b.imag, prec, ctx)
    nmax = int(ctx.sqrt(need)) + 2
    budget = max_terms if max_terms is not None else 10 * prec
    if nmax > budget:
        raise ValueError(f"Im tau too small: {nmax} theta terms needed, budget {budget}")
    ipi = ctx.mpc(0, ctx.pi)
    t = tau_b.value
    s00 = s01 = s10 = ctx.mpc(0)
    for n in range(-nmax, nmax + 1):
        e = ctx.exp(ipi * n * n * t)
        s00 += e
        s01 += (-1) ** (n % 2) * e
        h = n + ctx.mpf(1) / 2
        s10 += ctx.exp(ipi * h * h * t)
    return BigComplex(s00, prec), BigComplex(s01, prec), BigComplex(s10, prec)


def eisenstein_numeric(k, tau, prec, max_terms=None):
    """E_k(tau) for k in {2, 4, 6} by the Lambert series."""
    if k not in _EIS_FACTOR:
        raise ValueError("k must be 2, 4 or 6")
    ctx, tau_b, w = _nome(tau, prec)
    q = w * w
    need = _term_budget(tau_b.imag, prec + 64, ctx) / 2
    nmax = int(need) + 2
    budget = max_terms if max_terms is not None else 10 * prec
    if nmax > budget:
        raise ValueError(f"Im tau too small: {nmax} terms needed, budget {budget}")
    s = ctx.mpc(0)
    qn = ctx.mpc(1)
    for n in range(1, nmax + 1):
        qn *= q
        s += ctx.mpf(n) ** (k - 1) * qn / (1 - qn)
    return BigComplex(1 + _EIS_FACTOR[k] * s, prec)


def j_numeric(tau, prec):
    """x = J(tau) = E4^3/(E4^3 - E6^2)."""
    e4 = eisenstein_numeric(4, tau, prec)
    e6 = eisenstein_numeric(6, tau, prec)
    e43 = e4 ** 3
    return e43 / (e43 - e6 * e6)


def two_var_invariants(tau1, tau2, x, prec):
    """The theta-product invariants E4^(2) and Delta^(2) at (tau1, tau2, x)."""
    ctx = context(prec)
    x = BigComplex(x, prec)
    if abs(x.value) == 0:
        raise ValueError("x must be non-zero")
    th1 = theta_numeric(tau1, prec)
    th2 = theta_numeric(tau2, prec)
    s = (BigComplex(2 * ctx.pi, prec) / x) ** 2
    e4 = BigComplex(0, prec)
    prod = BigComplex(1, prec)
    for a, b in zip(th1, th2):
        term = a ** 4 * b ** 4
        e4 = e4 + term
        prod = prod * term
    return s * e4, s ** 3 * prod * 2


def theta_transformations(tau, prec):
    """Residuals of the six transformation rules under tau -> tau + 1 and tau -> -1/tau.

    Returns ``{rule: |lhs - rhs|}`` with the rules
    theta00(tau+1) = theta01, theta01(tau+1) = theta00, theta10(tau+1) = e^(2 pi i/8) theta10,
    theta00(-1/tau) = (-i tau)^(1/2) theta00, theta01(-1/tau) = (-i tau)^(1/2) theta10,
    theta10(-1/tau) = (-i tau)^(1/2) theta01.
    """
    ctx = context(prec)
    t = BigComplex(tau, prec)
    a00, a01, a10 = theta_numeric(t.value, prec)
    b00, b01, b10 = theta_numeric(t.value + 1, prec)
    c00, c01, c10 = theta_numeric(-1 / t.value, prec)
    r = BigComplex(ctx.sqrt(ctx.mpc(0, -1) * t.value), prec)
    e8 = BigComplex(ctx.expjpi(ctx.mpf(1) / 4), prec)
    pairs = {
        "00(tau+1)=01": (b00, a01),
        "01(tau+1)=00": (b01, a00),
        "10(tau+1)=e^(2pi i/8) 10": (b10, e8 * a10),
        "00(-1/tau)=(-i tau)^(1/2) 00": (c00, r * a00),
        "01(-1/tau)=(-i tau)^(1/2) 10": (c01, r * a10),
        "10(-1/tau)=(-i tau)^(1/2) 01": (c10, r * a01),
    }
    return {k: abs((x - y).value) for k, (x, y) in pairs.items()}
