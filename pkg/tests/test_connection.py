from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from p2periods import connection as cn
from p2periods.connection import LAM, RF, Qv, rf


@pytest.fixture(scope="module")
def T4():
    return cn.matrix_T(4)


@pytest.fixture(scope="module")
def L4():
    return cn.operator_L(4)


def test_euler_field_decomposition():
    assert cn.quantum_matrices(5).euler_check


def test_discriminant_at_zero():
    D = cn.discriminant(3)
    assert D[0] == LAM ** 3 - 27 * Qv


def test_lam_minus_E_is_homogeneous():
    # entry (i, j) has degree 1 + j - i in the grading deg Q = 3, deg lam = 1, deg t = -1
    LE = cn.quantum_matrices(5).lam_minus_E
    for i in range(3):
        for j in range(3):
            assert cn.series_degree(LE[i, j]) in (1 + j - i, "zero")


def test_T_closed_form(T4):
    assert T4.mismatches == ()
    assert T4.det_ok
    assert T4.row_degrees_ok


def test_T_at_zero_construction_column():
    # first column of T(t=0) is (1, 0, 0) from the construction; the display has
    # 1/(lam^3 - 27Q) in the (1,1) entry
    mism, T0, P0 = cn.compare_T_at_zero()
    assert T0[0][0] == RF(1)
    assert T0[1][0] == 0 and T0[2][0] == 0
    assert mism == ((0, 0),)
    assert P0[0][0] * (LAM ** 3 - 27 * Qv) == T0[0][0]


def test_T_denominators(T4):
    # entries only have lam and lam^3 - 27Q in their denominators
    T0 = T4.T.at_zero()
    for row in T0:
        for e in row:
            if e != 0:
                cn.split_denominator(e)


def test_operator_L(L4):
    assert L4.ok
    assert L4.polynomial_ok and L4.degree_ok and L4.weight_ok
    assert L4.corrected_column_ok
    assert not L4.printed_column_ok


def test_operator_L_at_zero(L4):
    at0 = tuple(c[0] for c in L4.L.coeffs)
    assert at0 == cn.printed_L_at_zero()


def test_reduction_rule():
    rep = cn.hge_reduction_rule()
    assert rep.proportional
    assert all(r == 0 for r in rep.residual)


def test_reduction_normal_forms():
    # D^3 reduces to the rule itself
    nf = cn.normal_forms(4)
    assert tuple(nf[3]) == cn.REDUCTION
    # reducing an operator already of order two is the identity
    ops = (rf(1), rf(2), Qv)
    assert tuple(cn.reduce_operator(ops)) == ops


def test_quadratic_form():
    M = cn.quadratic_form_matrix(3)
    at0 = M.at_zero()
    expect = ((0, 12, -4 * LAM / 3), (12, 4 * LAM, 0), (-4 * LAM / 3, 0, -4 * Qv / 3))
    assert all(at0[i][j] == rf(expect[i][j]) if isinstance(expect[i][j], int)
               else at0[i][j] == expect[i][j] for i in range(3) for j in range(3))
    assert M[0, 0][1] == RF(4)
    for i in range(3):
        for j in range(3):
            assert (M[i, j] - M[j, i]).is_zero()


def test_normalize():
    c, pn, pd = cn.normalize(rf(6) * LAM / (4 * Qv - 2))
    assert c == 3
    assert pd.as_expr() == (2 * Qv - 1).numer.as_expr()
    assert pn.as_expr() == LAM.numer.as_expr()
    c, _, _ = cn.normalize(rf(3) * LAM / (4 * Qv - 2))
    assert c == Fraction(3, 2)
    assert isinstance(c, Fraction)
    assert pd.LC > 0


weights = st.tuples(st.integers(0, 3), st.integers(0, 6))


@given(st.lists(weights, min_size=1, max_size=3), st.integers(0, 2))
def test_q_derivative_preserves_weight(monos, shift):
    # Q d/dQ has degree zero; build a homogeneous polynomial of weight 3a + b
    w = max(3 * a + b for a, b in monos) + 3 * shift
    f = sum((Qv ** ((w - b) // 3) * LAM ** b for a, b in monos if (w - b) % 3 == 0), RF(0))
    if f == 0:
        return
    g = cn.q_derivative(f)
    assert g == 0 or cn.rf_weight(g) == w


def test_truncation_guard():
    with pytest.raises(cn.TruncationError):
        cn.quantum_matrices(0)
