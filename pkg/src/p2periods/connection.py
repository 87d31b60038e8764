r"""
Second structure connection of the quantum cohomology of P^2.

Entries are truncated series in ``t`` whose coefficients are rational
functions of ``(Q, lam)`` over Q.  The grading used throughout is
deg Q = 3, deg lam = 1, deg t = -1; the potential has degree 1.

The rational functions are elements of sympy's fraction field
``QQ(Q, lam)``, which keeps numerator and denominator coprime.
:func:`normalize` gives the canonical content-free form.
"""

from dataclasses import dataclass
from fractions import Fraction

import sympy
from sympy import QQ
from sympy.polys.fields import field as sym_field

from .corekit import TruncatedSeries
from .gw_potential import kontsevich_numbers, potential_derivative, required_degree
from .hypergeom import HGE3_LEFT, HGE3_RIGHT, _Xfield, _x

RF, Qv, LAM = sym_field("Q,lam", QQ)
T_VAR = "t"

THETA = (1, 0, -1)                   # Hodge grading, diagonal
POINCARE = ((0, 0, 1), (0, 1, 0), (1, 0, 0))
WEIGHTS = {"Q": 3, "lam": 1, "t": -1}


class TruncationError(ValueError):
    pass


# ---------------------------------------------------------------------------
# rational functions

def rf(x):
    """Coerce an int, Fraction or field element into QQ(Q, lam)."""
    if isinstance(x, Fraction):
        return RF(QQ(x.numerator, x.denominator))
    return RF(x)


def normalize(f):
    """(numerator, denominator) with integer coprime coefficients, content one on
    the numerator side and a positive leading coefficient in the denominator."""
    num, den = f.numer, f.denom
    cn, pn = num.primitive()
    cd, pd = den.primitive()
    c = cn / cd
    c = Fraction(int(c.numerator), int(c.denominator))
    if pd.LC < 0:
        pd, c = -pd, -c
    return c, pn, pd


def q_derivative(f):
    """Q d/dQ on a rational function."""
    return Qv * f.diff(Qv)


def _poly_weights(p):
    return {3 * m[0] + m[1] for m in p.monoms()} if p else set()


def rf_weight(f):
    """Weighted degree of a homogeneous rational function, None otherwise, for 0 returns None."""
    if f == 0:
        return None
    wn, wd = _poly_weights(f.numer), _poly_weights(f.denom)
    if len(wn) != 1 or len(wd) != 1:
        return None
    return wn.pop() - wd.pop()


def series_degree(s):
    """Common degree of a t-series entry (weight of coefficient minus k), or None."""
    degs = set()
    for k, c in s.items():
        w = rf_weight(c)
        if w is None:
            return None
        degs.add(w - k)
    if len(degs) > 1:
        return None
    return degs.pop() if degs else "zero"


def denominator_factors(f):
    """Factor the denominator; returns ``{factor_expr: multiplicity}``."""
    den = f.denom.as_expr()
    _, facs = sympy.factor_list(den)
    return {str(p): m for p, m in facs}


def split_denominator(f):
    """Write the denominator as c * lam^a * (lam^3 - 27Q)^b; returns (a, b) or raise."""
    q, lam = sympy.symbols("Q lam")
    den = sympy.Poly(f.denom.as_expr(), q, lam)
    _, facs = den.factor_list()
    a = b = 0
    disc = sympy.Poly(lam ** 3 - 27 * q, q, lam)
    for p, m in facs:
        if p == sympy.Poly(lam, q, lam) or p == sympy.Poly(-lam, q, lam):
            a += m
        elif p == disc or p == -disc:
            b += m
        else:
            raise ValueError(f"unexpected denominator factor {p.as_expr()}")
    return a, b


# ---------------------------------------------------------------------------
# series matrices

def _zero(order):
    return TruncatedSeries(T_VAR, (), 0, order)


def _const(c, order):
    return TruncatedSeries(T_VAR, (rf(c),), 0, order)


def _t(order):
    return TruncatedSeries.monomial(T_VAR, 1, RF(1)).truncate(order)


@dataclass(frozen=True)
class ConnSeriesMatrix:
    """3x3 matrix of t-series with rational-function coefficients."""
    rows: tuple
    order: int

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __mul__(self, other):
        if isinstance(other, ConnSeriesMatrix):
            rows = tuple(tuple(_sum(self.rows[i][k] * other.rows[k][j] for k in range(3))
                               for j in range(3)) for i in range(3))
            return ConnSeriesMatrix(rows, min(self.order, other.order))
        return ConnSeriesMatrix(tuple(tuple(e * other for e in r) for r in self.rows), self.order)

    __rmul__ = __mul__

    def __add__(self, other):
        return ConnSeriesMatrix(tuple(tuple(a + b for a, b in zip(r, s))
                                      for r, s in zip(self.rows, other.rows)),
                                min(self.order, other.order))

    def __sub__(self, other):
        return self + other * rf(-1)

    def apply(self, vec):
        return tuple(_sum(self.rows[i][k] * vec[k] for k in range(3)) for i in range(3))

    def column(self, j):
        return tuple(self.rows[i][j] for i in range(3))

    def map(self, fn):
        return ConnSeriesMatrix(tuple(tuple(fn(e) for e in r) for r in self.rows), self.order)

    def q_derivative(self):
        return self.map(lambda s: s.map(q_derivative))

    def det(self):
        m = self.rows
        return (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
                - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
                + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))

    def adjugate(self):
        m = self.rows
        cof = [[m[(i + 1) % 3][(j + 1) % 3] * m[(i + 2) % 3][(j + 2) % 3]
                - m[(i + 1) % 3][(j + 2) % 3] * m[(i + 2) % 3][(j + 1) % 3]
                for j in range(3)] for i in range(3)]
        return ConnSeriesMatrix(tuple(tuple(cof[j][i] for j in range(3)) for i in range(3)),
                                self.order)

    def inverse(self):
        d = self.det()
        dinv = d.inverse(self.order)
        return self.adjugate() * dinv

    def at_zero(self):
        """Matrix of t^0 coefficients."""
        return tuple(tuple(e[0] if e.order != 0 else None for e in r) for r in self.rows)

    def degrees(self):
        return tuple(tuple(series_degree(e) for e in r) for r in self.rows)

    def truncate(self, order):
        return ConnSeriesMatrix(tuple(tuple(e.truncate(order) for e in r) for r in self.rows),
                                min(order, self.order))

    @classmethod
    def from_rows(cls, rows, order):
        out = []
        for r in rows:
            out.append(tuple(e.truncate(order) if isinstance(e, TruncatedSeries)
                             else _const(e, order) for e in r))
        return cls(tuple(out), order)


def _sum(it):
    it = list(it)
    s = it[0]
    for x in it[1:]:
        s = s + x
    return s


def _to_rf_series(pd_series):
    """Convert a t-series with Q-polynomial coefficients into a t-series of QQ(Q, lam)."""
    def conv(c):
        return _sum([rf(v) * Qv ** d for d, v in c.items()] or [RF(0)])
    return pd_series.map(conv)


def potential_series(t_order):
    """All second and third derivatives F_ab, F_abc over {2, 3} as RF t-series."""
    idx = [(2, 2), (2, 3), (3, 3), (2, 2, 2), (2, 2, 3), (2, 3, 3), (3, 3, 3)]
    need = max(required_degree(i, t_order) for i in idx)
    table = kontsevich_numbers(max(need, 1))
    out = {}
    for i in idx:
        s = potential_derivative(i, t_order, table=table).series
        out["F" + "".join(map(str, i))] = _to_rf_series(s)
    return out


# ---------------------------------------------------------------------------
# quantum multiplication

@dataclass(frozen=True)
class QuantumMatrices:
    omega2: ConnSeriesMatrix
    omega3: ConnSeriesMatrix
    lam_minus_E: ConnSeriesMatrix
    euler_check: bool        # lam - E. equals lam - 3 Omega2 + t Omega3
    F: dict


def quantum_matrices(t_order):
    if t_order < 1:
        raise TruncationError("t_order must be at least 1")
    F = potential_series(t_order)
    z = _zero(t_order)
    one = _const(1, t_order)
    t = _t(t_order)
    lam = _const(LAM, t_order)
    O2 = ConnSeriesMatrix(((z, F["F223"], F["F233"]),
                           (one, F["F222"], F["F223"]),
                           (z, one, z)), t_order)
    O3 = ConnSeriesMatrix(((z, F["F233"], F["F333"]),
                           (z, F["F223"], F["F233"]),
                           (one, z, z)), t_order)
    LE = ConnSeriesMatrix(((lam, F["F23"] * rf(-2), F["F33"] * rf(-3)),
                           (one * rf(-3), lam - F["F22"], F["F23"] * rf(-2)),
                           (t, one * rf(-3), lam)), t_order)
    eye = ConnSeriesMatrix.from_rows(((LAM, 0, 0), (0, LAM, 0), (0, 0, LAM)), t_order)
    alt = eye - O2 * rf(3) + O3 * t
    euler_ok = all((alt[i, j] - LE[i, j]).is_zero() for i in range(3) for j in range(3))
    return QuantumMatrices(O2, O3, LE, euler_ok, F)


def discriminant(t_order):
    """det(lam - E.) as a t-series."""
    return quantum_matrices(t_order).lam_minus_E.det()


def delta1(F, t_order):
    """The determinant numerator lam^3 + 3F223 t lam^2 + 3(3F233+F33) t lam - 3(2F23F233 - 3F223F33) t^2."""
    t = _t(t_order)
    lam = rf(LAM)
    return (_const(LAM ** 3, t_order) + F["F223"] * t * (3 * lam ** 2)
            + (F["F233"] * rf(3) + F["F33"]) * t * (3 * lam)
            - (F["F23"] * F["F233"] * rf(2) - F["F223"] * F["F33"] * rf(3)) * t * t * rf(3))


def matrix_A(qm):
    """A = -(-theta + 1/2)(lam - E.)^-1."""
    inv = qm.lam_minus_E.inverse()
    rows = []
    for i in range(3):
        f = -(Fraction(-THETA[i]) + Fraction(1, 2))
        rows.append(tuple(e * rf(f) for e in inv.rows[i]))
    return ConnSeriesMatrix(tuple(rows), inv.order)


@dataclass(frozen=True)
class TReport:
    T: ConnSeriesMatrix
    printed: ConnSeriesMatrix
    mismatches: tuple          # entries (i, j) where the two constructions differ
    det_ok: bool
    row_degrees: tuple
    row_degrees_ok: bool

    @property
    def ok(self):
        return not self.mismatches and self.det_ok and self.row_degrees_ok


def _construct_T(qm):
    A = matrix_A(qm)
    O2 = qm.omega2
    order = A.order
    e1 = (_const(1, order), _zero(order), _zero(order))
    c2 = (A * O2).apply(e1)
    c3 = (A * O2 * A + A.q_derivative()).apply(O2.apply(e1))
    rows = tuple(tuple((e1, c2, c3)[j][i] for j in range(3)) for i in range(3))
    return ConnSeriesMatrix(rows, order), A


def printed_T(F, t_order):
    """T from the closed-form entries t13, t23, t33 in terms of the potential."""
    t = _t(t_order)
    one = _const(1, t_order)
    lam = rf(LAM)
    F22, F23, F33 = F["F22"], F["F23"], F["F33"]
    F222, F223, F233 = F["F222"], F["F223"], F["F233"]
    c = rf

    def q(x):
        return x * c(Fraction(1, 4))

    t13 = (q(F223 * c(3)) * lam ** 4
           + q(F22 * F223 * c(-3) + F222 * F23 * c(2) + F233 * c(9) - F33 * c(3)) * lam ** 3
           + q(F223 * F23 * c(-12) - F22 * F233 * c(9) + F22 * F33 * c(3) + F222 * F33 * c(9)
               - F23 * F233 * t * c(6) + F223 * F33 * t * c(9)) * lam ** 2
           + q(F23 * F233 * c(-54) + F223 * F33 * c(27) - F223 * F23 * F23 * t * c(4)
               + F22 * F23 * F233 * t * c(6) - F22 * F223 * F33 * t * c(9)
               - F33 * F33 * t * c(9) + F23 * F33 * (one * c(6) + F222 * t) * c(6)) * lam
           + q(F33 * F33 * c(81) + F23 * F23 * F233 * t * c(36) - F223 * F23 * F33 * t * c(72)
               - F23 * F23 * F33 * t * c(12) + F22 * F33 * F33 * t * c(9)
               + F222 * F33 * F33 * t * c(27)))
    t23 = (F222 * c(-Fraction(1, 4)) * lam ** 4 - F223 * c(3) * lam ** 3
           + (F233 * c(-Fraction(27, 4)) + F223 * F23 * t * c(2)
              - F222 * F33 * t * c(Fraction(3, 2))) * lam ** 2
           + (F23 * F233 * t * c(9) - F223 * F33 * t * c(9)) * lam
           + (F23 * F23 * F233 * c(-3) + F223 * F23 * F33 * c(6)
              - F222 * F33 * F33 * c(Fraction(9, 4))) * t * t)
    t33 = (one * c(Fraction(3, 4) * LAM ** 4)
           - (F22 + F222 * c(3) - F223 * t * c(3)) * c(Fraction(3, 4)) * lam ** 3
           - (F223 * c(36) + F23 * c(12) + F22 * F223 * t * c(3) - F222 * F23 * t * c(2)
              - F233 * t * c(9) - F33 * t * c(3)) * c(Fraction(3, 4)) * lam ** 2
           - (F233 * c(81) + F33 * c(27) - F223 * F23 * t * c(12) - F23 * F23 * t * c(4)
              + F22 * F233 * t * c(9) + F22 * F33 * t * c(3) + F222 * F33 * t * c(9)
              + F23 * F233 * t * t * c(6) - F223 * F33 * t * t * c(9)) * c(Fraction(3, 4)) * lam
           - (F23 * F233 * t * c(-54) + F223 * F33 * t * c(81) + F223 * F23 * F23 * t * t * c(4)
              - F22 * F23 * F233 * t * t * c(6) + F22 * F223 * F33 * t * t * c(9)
              - F222 * F23 * F33 * t * t * c(6)) * c(Fraction(3, 4)))
    D = _lam_minus_E(F, t_order).det()
    Di = D.inverse(t_order)
    Di2 = Di * Di
    z = _zero(t_order)
    rows = ((one, (F23 * lam + F33 * c(Fraction(9, 2))) * Di, t13 * Di2),
            (z, (one * c(-lam ** 2 / 2) - F33 * t * c(Fraction(3, 2))) * Di, t23 * Di2),
            (z, (one * c(-9 * lam / 2) + F23 * t * c(3)) * Di, t33 * Di2))
    return ConnSeriesMatrix(rows, t_order)


def _lam_minus_E(F, t_order):
    z = _const(LAM, t_order)
    one = _const(1, t_order)
    return ConnSeriesMatrix(((z, F["F23"] * rf(-2), F["F33"] * rf(-3)),
                             (one * rf(-3), z - F["F22"], F["F23"] * rf(-2)),
                             (_t(t_order), one * rf(-3), z)), t_order)


def matrix_T(t_order):
    """T built from its column construction and from the closed-form entries, compared."""
    qm = quantum_matrices(t_order)
    T, _ = _construct_T(qm)
    P = printed_T(qm.F, t_order)
    mism = tuple((i, j) for i in range(3) for j in range(3) if not (T[i, j] - P[i, j]).is_zero())
    D = qm.lam_minus_E.det()
    lhs = T.det() * (D * D) * rf(Fraction(-8, 3))
    det_ok = (lhs - delta1(qm.F, t_order)).is_zero()
    degs = T.degrees()
    rd_ok = all(all(d in (1 - (i + 1), "zero") for d in degs[i]) for i in range(3))
    return TReport(T, P, mism, det_ok, degs, rd_ok)


def printed_T_at_zero():
    """The displayed value of T at t = 0, entry by entry, exactly as printed."""
    D = LAM ** 3 - 27 * Qv
    pre = 1 / D
    return ((pre * 1, pre * 9 * Qv / 2, pre * 3 * Qv * (2 * LAM ** 3 + 27 * Qv) / (4 * D)),
            (RF(0), pre * (-LAM ** 2 / 2), pre * (-27 * Qv * LAM ** 2) / (4 * D)),
            (RF(0), pre * (-9 * LAM / 2), pre * 3 * LAM * (LAM ** 3 - 108 * Qv) / (4 * D)))


def compare_T_at_zero(t_order=1):
    """Entries (i, j) where T(t=0) differs from the displayed matrix."""
    T0 = matrix_T(t_order).T.at_zero()
    P0 = printed_T_at_zero()
    return tuple((i, j) for i in range(3) for j in range(3) if T0[i][j] != P0[i][j]), T0, P0


# ---------------------------------------------------------------------------
# the operator L

@dataclass(frozen=True)
class DiffOp:
    """sum_a coeffs[a] (Q d/dQ)^a with t-series coefficients."""
    coeffs: tuple

    @property
    def order(self):
        return len(self.coeffs) - 1

    def at_zero(self):
        return tuple(c[0] for c in self.coeffs)


@dataclass(frozen=True)
class OperatorLReport:
    L: DiffOp
    ell: tuple
    polynomial_ok: bool
    lam_degrees: tuple
    degree_ok: bool
    weight_ok: bool
    printed_column_ok: bool      # closed form of A e3 exactly as displayed
    corrected_column_ok: bool    # same with (4F23^2 - 3F22F33)/2 in the first entry

    @property
    def ok(self):
        return self.polynomial_ok and self.degree_ok and self.weight_ok and self.corrected_column_ok


def operator_L(t_order):
    """d/dt Z = (L0 + L1 D + L2 D^2) Z with D = Q d/dQ."""
    qm = quantum_matrices(t_order)
    F = qm.F
    T, A = _construct_T(qm)
    D = qm.lam_minus_E.det()
    Ae3 = A.column(2)
    printed_ok, corrected_ok = _check_third_column(F, Ae3, D, t_order)
    Ls = T.inverse().apply(Ae3)
    d1 = delta1(F, t_order)
    ells = tuple(d1 * L for L in Ls)
    poly_ok = True
    degs = []
    weight_ok = True
    for i, ell in enumerate(ells):
        dmax = 0
        for k, c in ell.items():
            if not c.denom.is_ground:
                poly_ok = False
                continue
            num = c.numer
            if num:
                dmax = max(dmax, max(m[1] for m in num.monoms()))
                ws = _poly_weights(num)
                if ws != {4 + k}:
                    weight_ok = False
        degs.append(dmax)
    deg_ok = all(d <= 2 + i for i, d in enumerate(degs)) and degs[2] == 4
    return OperatorLReport(DiffOp(tuple(Ls)), ells, poly_ok, tuple(degs), deg_ok, weight_ok,
                           printed_ok, corrected_ok)


def _third_column(F, t_order, first_row_half):
    lam = rf(LAM)
    quad = F["F23"] * F["F23"] * rf(4) - F["F22"] * F["F33"] * rf(3)
    if first_row_half:
        quad = quad * rf(Fraction(1, 2))
    return (F["F33"] * (3 * lam / 2) + quad,
            F["F23"] * (-lam) - F["F33"] * rf(Fraction(9, 2)),
            _const(-3 * LAM ** 2 / 2, t_order) + F["F22"] * (3 * lam / 2) + F["F23"] * rf(9))


def _check_third_column(F, Ae3, D, t_order):
    """Compare Delta * A e3 with the closed form as printed and with the quadratic
    part of the first entry halved, which is what the adjugate gives."""
    scaled = tuple(a * D for a in Ae3)
    res = []
    for half in (False, True):
        v = _third_column(F, t_order, half)
        res.append(all((a - b).is_zero() for a, b in zip(scaled, v)))
    return tuple(res)


def printed_L_at_zero():
    return (9 * Qv / (2 * LAM ** 2), 36 * Qv / LAM ** 2, 2 * (27 * Qv - LAM ** 3) / LAM ** 2)


# ---------------------------------------------------------------------------
# reduction at t = 0

R_FACTOR = 3 * Qv / (8 * (LAM ** 3 - 27 * Qv))
REDUCTION = (5 * R_FACTOR, 46 * R_FACTOR, 108 * R_FACTOR)


def reduce_once(coeffs):
    """Replace D^3 by R(5 + 46 D + 108 D^2) once in ``(c0, .., c3)``."""
    c = list(coeffs) + [RF(0)] * (4 - len(coeffs))
    c3 = c[3]
    return tuple(c[i] + c3 * REDUCTION[i] for i in range(3))


def normal_forms(k_max):
    """NF(D^k) = (r0, r1, r2) for k = 0..k_max, valid at t = 0."""
    out = [(RF(1), RF(0), RF(0))]
    for _ in range(k_max):
        r0, r1, r2 = out[-1]
        # D o (r0 + r1 D + r2 D^2)
        shifted = (q_derivative(r0), r0 + q_derivative(r1), r1 + q_derivative(r2), r2)
        out.append(reduce_once(shifted))
    return out


def reduce_operator(coeffs):
    """Reduce sum c_k D^k to order at most two using the t = 0 rule."""
    nfs = normal_forms(max(len(coeffs) - 1, 0))
    res = [RF(0)] * 3
    for k, c in enumerate(coeffs):
        if c == 0:
            continue
        for i in range(3):
            res[i] += c * nfs[k][i]
    return tuple(res)


@dataclass(frozen=True)
class ReductionReport:
    rule: tuple
    transformed: tuple       # operator coefficients in D_x after the substitution
    target: tuple
    proportional: bool
    residual: tuple


def hge_reduction_rule():
    """The rule and the check that Z = Q^(-1/6) z(x), x = lam^3/(27Q), turns it into the
    order-3 hypergeometric operator."""
    x = _x
    # with Q = lam^3/(27x) the factor R becomes 1/(72(x-1))
    R = 1 / (72 * (x - 1))
    # D = Q d/dQ acts on Q^(-1/6) f(x) as -(Dx + 1/6); expand in powers of Dx
    minus = [Fraction(-1, 6), Fraction(-1)]            # -(Dx + 1/6) as a polynomial in Dx

    def pmul(a, b):
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, u in enumerate(a):
            for j, v in enumerate(b):
                out[i + j] += u * v
        return out

    p1 = minus
    p2 = pmul(p1, minus)
    p3 = pmul(p2, minus)
    ops = [[Fraction(1)], p1, p2, p3]
    lhs = [_Xfield(0)] * 4
    for k, p in enumerate(ops):
        coef = {0: -5 * R, 1: -46 * R, 2: -108 * R, 3: _Xfield(1)}[k]
        for i, c in enumerate(p):
            lhs[i] += coef * _Xfield(QQ(c.numerator, c.denominator))
    target = [_Xfield(QQ(a.numerator, a.denominator)) - x * _Xfield(QQ(b.numerator, b.denominator))
              for a, b in zip(HGE3_LEFT, HGE3_RIGHT)]
    ratio = target[3] / lhs[3]
    residual = tuple(ratio * l - t for l, t in zip(lhs, target))
    return ReductionReport((R_FACTOR, 5, 46, 108), tuple(lhs), tuple(target),
                           all(r == 0 for r in residual), residual)


# ---------------------------------------------------------------------------
# quadratic form

def quadratic_form_matrix(t_order):
    """(-theta+1/2)^-1 g (lam - E.) (-theta+1/2)^-1 as polynomial-in-(Q, t, lam) entries."""
    qm = quantum_matrices(t_order)
    LE = qm.lam_minus_E
    h = [Fraction(1) / (-Fraction(th) + Fraction(1, 2)) for th in THETA]
    g = POINCARE
    rows = []
    for i in range(3):
        row = []
        for j in range(3):
            s = _zero(t_order)
            for k in range(3):
                if g[i][k]:
                    s = s + LE[k, j] * rf(g[i][k])
            row.append(s * rf(h[i] * h[j]))
        rows.append(tuple(row))
    return ConnSeriesMatrix(tuple(rows), t_order)
