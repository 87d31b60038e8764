r"""
Solutions at x = infinity of the order-3 equation

.. math::

    D(D-\tfrac13)(D-\tfrac23) - x(D+\tfrac16)^3,\qquad D = x\partial_x,

and of the order-2 equation whose symmetric square it is, together with
the connection matrix to the period basis and Wronskian identities.

Expansions with logarithms are :class:`LogSeries`: a prefactor
``x**offset`` times a polynomial in the formal symbol ``l = log x``
whose coefficients are series in ``u = 1/x``.  ``D`` acts by
``D l = 1`` and ``D x**a = a x**a``, so everything stays exact.
"""

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import sympy
from sympy import QQ
from sympy.polys.fields import field as sym_field
from sympy.polys.rings import ring as sym_ring

from .corekit import TruncatedSeries, binomial_series

U = "u"


class LogSeries:
    """``x**offset * sum_j l**j * parts[j](u)`` with ``u = 1/x``, ``l = log x``."""

    __slots__ = ("offset", "parts")

    def __init__(self, offset, parts):
        parts = list(parts)
        while parts and parts[-1].is_zero() and len(parts) > 1:
            parts.pop()
        self.offset = Fraction(offset)
        self.parts = tuple(parts)

    @property
    def order(self):
        return min(p.order for p in self.parts)

    @property
    def log_degree(self):
        return len(self.parts) - 1

    def _align(self, other):
        if self.offset != other.offset:
            raise ValueError(f"offsets differ: {self.offset} vs {other.offset}")
        n = max(len(self.parts), len(other.parts))
        z = TruncatedSeries(U, (), 0, self.order)
        a = list(self.parts) + [z] * (n - len(self.parts))
        b = list(other.parts) + [TruncatedSeries(U, (), 0, other.order)] * (n - len(other.parts))
        return a, b

    def __add__(self, other):
        a, b = self._align(other)
        return LogSeries(self.offset, [x + y for x, y in zip(a, b)])

    def __neg__(self):
        return LogSeries(self.offset, [-p for p in self.parts])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, LogSeries):
            return LogSeries(self.offset, [p * other for p in self.parts])
        n = len(self.parts) + len(other.parts) - 1
        out = [None] * n
        for i, p in enumerate(self.parts):
            for j, q in enumerate(other.parts):
                t = p * q
                out[i + j] = t if out[i + j] is None else out[i + j] + t
        return LogSeries(self.offset + other.offset, out)

    __rmul__ = __mul__

    def D(self):
        """x d/dx."""
        n = len(self.parts)
        out = []
        for j in range(n):
            p = self.parts[j]
            # x^(offset) u^k -> (offset - k)
            t = TruncatedSeries(U, [(self.offset - (p.val + i)) * c for i, c in enumerate(p.coeffs)],
                                p.val, p.order)
            if j + 1 < n:
                t = t + self.parts[j + 1] * (j + 1)
            out.append(t)
        return LogSeries(self.offset, out)

    def times_x(self):
        """Multiply by x = 1/u (costs one order in u)."""
        return LogSeries(self.offset, [p.shift(-1) for p in self.parts])

    def is_zero(self):
        return all(p.is_zero() for p in self.parts)

    def first_nonzero(self):
        """``(log_power, u_power, coefficient)`` of the lowest nonzero term, or None."""
        best = None
        for j, p in enumerate(self.parts):
            for k, c in p.items():
                if best is None or k < best[1]:
                    best = (j, k, c)
                break
        return best

    def __repr__(self):
        return f"LogSeries(x^{self.offset}, {list(self.parts)})"


def apply_const_operator(poly_in_D, f):
    """Apply ``sum c_k D^k`` with constant coefficients."""
    result = None
    g = f
    for k, c in enumerate(poly_in_D):
        if c:
            t = g * Fraction(c)
            result = t if result is None else result + t
        g = g.D()
    return result


def _expand_linear_factors(roots):
    """Coefficients (low to high) of prod (D - r)."""
    coeffs = [Fraction(1)]
    for r in roots:
        new = [Fraction(0)] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            new[i + 1] += c
            new[i] -= r * c
        coeffs = new
    return coeffs


HGE3_LEFT = _expand_linear_factors([Fraction(0), Fraction(1, 3), Fraction(2, 3)])
HGE3_RIGHT = _expand_linear_factors([Fraction(-1, 6)] * 3)


def hge3_residual(z):
    """Apply D(D-1/3)(D-2/3) - x (D+1/6)^3 to a LogSeries."""
    return apply_const_operator(HGE3_LEFT, z) - apply_const_operator(HGE3_RIGHT, z).times_x()


def hge2_residual(f):
    """Apply (1-x) D^2 - (2+x)/6 D - x/144, i.e. (1-x) times the order-2 operator."""
    d1 = f.D()
    d2 = d1.D()
    left = d2 - d1 * Fraction(1, 3)
    right = d2 + d1 * Fraction(1, 6) + f * Fraction(1, 144)
    return left - right.times_x()


# ---------------------------------------------------------------------------
# order-3 equation

@dataclass(frozen=True)
class Sol3F2:
    order: int
    a: tuple
    b: tuple
    c: tuple
    z: tuple = dc_field(repr=False)


def _series(coeffs, order):
    return TruncatedSeries(U, coeffs, 0, order)


def solve_3f2(order, c_rule="squares"):
    """Coefficients a_n, b_n, c_n and the three solutions at infinity to ``O(u**order)``.

    ``c_rule="squares"`` uses c_{n+1} = c_n + 3/(n+1)^2 - sum_i 1/(n+r_i)^2,
    which is what the log-squared Frobenius solution needs.
    ``c_rule="pairwise"`` uses products (n+r_i)(n+r_j) in the denominators
    instead; it does not give a solution and is kept as a negative control.

    >>> solve_3f2(2).a[1]
    Fraction(5, 72)
    """
    if order < 1:
        raise ValueError("order must be positive")
    if c_rule not in ("squares", "pairwise"):
        raise ValueError("c_rule must be 'squares' or 'pairwise'")
    r = [Fraction(1, 6), Fraction(1, 2), Fraction(5, 6)]
    pairs = [(1, 2), (0, 2), (0, 1)] if c_rule == "pairwise" else [(0, 0), (1, 1), (2, 2)]
    a, b, c = [Fraction(1)], [Fraction(0)], [Fraction(0)]
    for n in range(order - 1):
        a.append(a[-1] * (n + r[0]) * (n + r[1]) * (n + r[2]) / Fraction(n + 1) ** 3)
        b.append(b[-1] + sum(1 / (n + ri) for ri in r) - Fraction(3, n + 1))
        c.append(c[-1] + Fraction(3, (n + 1) ** 2)
                 - sum(1 / ((n + r[i]) * (n + r[j])) for i, j in pairs))
    off = Fraction(-1, 6)
    z1 = LogSeries(off, [_series(a, order)])
    z2 = LogSeries(off, [_series([-x * y for x, y in zip(a, b)], order), _series(a, order)])
    z3 = LogSeries(off, [_series([x * (y * y + w) for x, y, w in zip(a, b, c)], order),
                         _series([-2 * x * y for x, y in zip(a, b)], order),
                         _series(a, order)])
    return Sol3F2(order, tuple(a), tuple(b), tuple(c), (z1, z2, z3))


@dataclass(frozen=True)
class Sol2F1:
    order: int
    v: tuple
    u: tuple
    v_inf: LogSeries = dc_field(repr=False)
    u_inf: LogSeries = dc_field(repr=False)


def solve_2f1(order):
    """Coefficients v_n, u_n and the solutions v_inf, u_inf at infinity."""
    if order < 1:
        raise ValueError("order must be positive")
    r = [Fraction(1, 12), Fraction(5, 12)]
    v, u = [Fraction(1)], [Fraction(0)]
    for n in range(order - 1):
        v.append(v[-1] * (n + r[0]) * (n + r[1]) / Fraction(n + 1) ** 2)
        u.append(u[-1] + 1 / (n + r[0]) + 1 / (n + r[1]) - Fraction(2, n + 1))
    off = Fraction(-1, 12)
    vi = LogSeries(off, [_series(v, order)])
    ui = LogSeries(off, [_series([-x * y for x, y in zip(v, u)], order), _series(v, order)])
    return Sol2F1(order, tuple(v), tuple(u), vi, ui)


# ---------------------------------------------------------------------------
# symmetric square

_Xfield, _x = sym_field("x", QQ)


def _Dx(f):
    return _x * f.diff(_x)


def symmetric_square_coefficients():
    """p2, p1, p0 derived from the order-2 operator D^2 - alpha D - beta."""
    x = _x
    alpha = (2 + x) / (6 * (1 - x))
    beta = x / (144 * (1 - x))
    p2 = 3 * alpha
    p1 = 4 * beta - 2 * alpha ** 2 + _Dx(alpha)
    p0 = -4 * alpha * beta + 2 * _Dx(beta)
    return p2, p1, p0


def printed_symmetric_square_coefficients():
    x = _x
    return ((2 + x) / (2 * (1 - x)),
            -(8 - 3 * x) / (36 * (1 - x)),
            x / (216 * (1 - x)))


def _hge3_in_D():
    """Coefficients (D^0..D^3) of the order-3 operator as polynomials in x."""
    x = _x
    return [HGE3_LEFT[k] - x * HGE3_RIGHT[k] for k in range(4)]


@dataclass
class SymSquareReport:
    p: tuple
    printed_match: bool
    operator_residual: tuple
    operator_residual_inverse_factor: tuple
    series_residuals: dict
    first_failure: object = None

    @property
    def ok(self):
        return (self.printed_match and all(r == 0 for r in self.operator_residual)
                and self.first_failure is None)


def _first_bad(ls):
    return ls.first_nonzero()


def symmetric_square(order=15):
    """Derive p0, p1, p2 and verify the symmetric-square structure.

    Checks that (1 - x)(D^3 - p2 D^2 - p1 D - p0) equals the order-3
    operator, and the series identities z1 = v^2, z2 = u v, z3 = u^2 at
    infinity to ``O(u**order)`` including all log powers.  The residual
    with the factor (1 - x)^(-1) in place of (1 - x) is reported as well.
    """
    p2, p1, p0 = symmetric_square_coefficients()
    printed = printed_symmetric_square_coefficients()
    match = (p2, p1, p0) == printed
    target = _hge3_in_D()
    mine = [-p0, -p1, -p2, _Xfield(1)]
    one_minus_x = 1 - _x
    res = tuple(one_minus_x * m - t for m, t in zip(mine, target))
    res_inv = tuple(m / one_minus_x - t for m, t in zip(mine, target))
    s3 = solve_3f2(order)
    s2 = solve_2f1(order)
    pairs = {
        "z1-v^2": s3.z[0] - s2.v_inf * s2.v_inf,
        "z2-uv": s3.z[1] - s2.u_inf * s2.v_inf,
        "z3-u^2": s3.z[2] - s2.u_inf * s2.u_inf,
    }
    residuals = {k: v.is_zero() for k, v in pairs.items()}
    first = None
    for k, v in pairs.items():
        if not v.is_zero():
            first = (k, _first_bad(v))
            break
    return SymSquareReport((p0, p1, p2), match, res, res_inv, residuals, first)


# ---------------------------------------------------------------------------
# connection matrix

CONST_RING, S_, LOG1728, IOTA = sym_ring("s,L,iota", QQ)


def matrix_mul(A, B):
    n, m, p = len(A), len(B), len(B[0])
    return [[sum((A[i][k] * B[k][j] for k in range(m)), CONST_RING(0))
             for j in range(p)] for i in range(n)]


def _mat(rows):
    return [[CONST_RING(c) for c in r] for r in rows]


def k_infinity():
    """Local monodromy at infinity in the log basis."""
    i = IOTA
    return [[CONST_RING(1), i, i ** 2], [CONST_RING(0), CONST_RING(1), 2 * i],
            [CONST_RING(0), CONST_RING(0), CONST_RING(1)]]


K_MATRIX = [[1, 0, 0], [1, 1, 0], [1, 2, 1]]


@dataclass(frozen=True)
class ConnMatrix:
    entries: tuple

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def as_sympy(self):
        """Substitute s = 1/(sqrt(6) pi), L = log 1728, iota = 2 pi i."""
        s, L, io = 1 / (sympy.sqrt(6) * sympy.pi), sympy.log(1728), 2 * sympy.pi * sympy.I
        return sympy.Matrix([[e.as_expr().subs({sympy.Symbol("s"): s, sympy.Symbol("L"): L,
                                                sympy.Symbol("iota"): io}) for e in row]
                             for row in self.entries])


def connection_matrix():
    """C_inf built from its first column and the column relations from K_inf.

    Entries live in Q[s, L, iota] with s = 1/(sqrt(6) pi), L = log 1728,
    iota = 2 pi i, all treated as independent symbols.
    """
    Kinf = k_infinity()
    n = [[Kinf[i][j] - (1 if i == j else 0) for j in range(3)] for i in range(3)]
    n2 = matrix_mul(n, n)
    c1 = [[S_ * LOG1728 ** 2], [2 * S_ * LOG1728], [S_]]
    m2 = [[n[i][j] - QQ(1, 2) * n2[i][j] for j in range(3)] for i in range(3)]
    m3 = [[QQ(1, 2) * n2[i][j] for j in range(3)] for i in range(3)]
    c2 = matrix_mul(m2, c1)
    c3 = matrix_mul(m3, c1)
    rows = tuple(tuple([c1[i][0], c2[i][0], c3[i][0]]) for i in range(3))
    return ConnMatrix(rows)


def printed_connection_matrix():
    s, L, i = S_, LOG1728, IOTA
    z = CONST_RING(0)
    return ((s * L ** 2, 2 * i * L * s, i ** 2 * s),
            (2 * L * s, 2 * i * s, z),
            (s, z, z))


def commutation_defect(C):
    """C K - K_inf C, which must vanish."""
    Cm = [list(r) for r in C.entries]
    K = _mat(K_MATRIX)
    lhs = matrix_mul(Cm, K)
    rhs = matrix_mul(k_infinity(), Cm)
    return [[lhs[i][j] - rhs[i][j] for j in range(3)] for i in range(3)]


def det3(M):
    return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1])
            - M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0])
            + M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0]))


# ---------------------------------------------------------------------------
# Wronskian

@dataclass
class WronskianReport:
    series: LogSeries
    expected_shape_ok: bool
    det_conn: object
    constant: object
    printed_constant: object
    matches_printed: bool


def wronskian_matrix(sols):
    return [[z, z.D(), z.D().D()] for z in sols]


def wronskian_3f2(order=6):
    """det[z_i, D z_i, D^2 z_i] for the basis at infinity, and the constant C.

    The determinant for the basis at infinity is compared with
    ``2 x**(-1/2) (1 - 1/x)**(-3/2)``; the constant for the period basis
    ``z = z_inf C_inf`` is ``C`` with ``det = C i x**(-1/2) + ...``
    (principal branch of (1-x)^(-3/2) for real x > 1).
    """
    if order < 2:
        raise ValueError("order must be at least 2")
    sol = solve_3f2(order)
    det = det3(wronskian_matrix(sol.z))
    # (1 - u)^(-3/2): flip odd signs of (1 + u)^(-3/2)
    b = binomial_series(U, Fraction(-3, 2), order)
    b = TruncatedSeries(U, [c * (-1) ** k for k, c in enumerate(b.coeffs)], 0, order)
    expect = LogSeries(Fraction(-1, 2), [b * 2])
    shape_ok = (det - expect).is_zero()
    C = connection_matrix()
    dC = det3([list(r) for r in C.entries])
    lead = det.first_nonzero()
    val = dC.as_expr().subs({sympy.Symbol("s"): 1 / (sympy.sqrt(6) * sympy.pi),
                             sympy.Symbol("L"): sympy.log(1728),
                             sympy.Symbol("iota"): 2 * sympy.pi * sympy.I})
    leading = sympy.nsimplify(sympy.simplify(val * sympy.Rational(lead[2].numerator, lead[2].denominator)))
    constant = sympy.simplify(leading / sympy.I)
    printed = -sympy.Rational(16, 3) / sympy.sqrt(6)
    return WronskianReport(det, shape_ok, dC, sympy.simplify(constant), printed,
                           sympy.simplify(constant - printed) == 0)


# ---------------------------------------------------------------------------
# gauge equivalence with the elliptic period equation

@dataclass
class GaugeReport:
    first_order_residual: object
    zeroth_order_residual: object
    j_invariant: object

    @property
    def ok(self):
        return self.first_order_residual == 0 and self.zeroth_order_residual == 0


def elliptic_gauge_check(exponent=Fraction(1, 6)):
    """Verify u = x^e (x-1)^(-1/4) f maps the elliptic period equation to the order-2 equation.

    With h = e/x - 1/(4(x-1)) the log-derivative of the prefactor, the
    first-derivative and zeroth-order coefficients must satisfy
    1/x - 2h = (1 - alpha)/x and h^2 - h' - h/x + r = -beta/x^2 where r is
    the potential (31x - 4)/(144 x^2 (1-x)^2).
    """
    x = _x
    e = QQ(exponent.numerator, exponent.denominator)
    alpha = (2 + x) / (6 * (1 - x))
    beta = x / (144 * (1 - x))
    r = (31 * x - 4) / (144 * x ** 2 * (1 - x) ** 2)
    h = e / x - QQ(1, 4) / (x - 1)
    res1 = 1 / x - 2 * h - (1 - alpha) / x
    res0 = h ** 2 - h.diff(x) - h / x + r + beta / x ** 2
    g2 = 27 * x / (x - 1)
    g3 = g2
    J = g2 ** 3 / (g2 ** 3 - 27 * g3 ** 2)
    return GaugeReport(res1, res0, J)


# ---------------------------------------------------------------------------
# q as a function of x from the order-2 solutions

def q_from_hypergeometric(order):
    """q = (u/1728) exp(sum u_m v_m u^m / sum v_m u^m) as a series in u = 1/x.

    This follows from tau = -(log 1728 + u_inf/v_inf)/(2 pi i).
    """
    from .corekit import exp_series
    s = solve_2f1(order)
    num = TruncatedSeries(U, [a * b for a, b in zip(s.u, s.v)], 0, order)
    den = TruncatedSeries(U, list(s.v), 0, order)
    e = exp_series(num / den)
    return e.shift(1) * Fraction(1, 1728)


def q_printed_ratio(order):
    """The ratio sum_{m>=1} u_m v_m u^m / sum_{m>=1} u_m u^m as printed; returns its series."""
    s = solve_2f1(order + 1)
    num = TruncatedSeries(U, [a * b for a, b in zip(s.u, s.v)][1:], 1, order + 1)
    den = TruncatedSeries(U, list(s.u)[1:], 1, order + 1)
    return num / den
