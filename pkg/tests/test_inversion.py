import pytest
import sympy

from p2periods import inversion as iv
from p2periods.connection import LAM, Qv, operator_L
from p2periods.corekit.numeric import context
from p2periods.modular import DELTA, E4


@pytest.fixture(scope="module")
def taylor3():
    return iv.taylor_coefficients(3)


@pytest.fixture(scope="module")
def result3(taylor3):
    return iv.invert_period_map(3, taylor3)


def test_first_operators():
    M = iv.taylor_operators(2)
    L = operator_L(2)
    assert tuple(M[1]) == tuple(c[0] for c in L.L.coeffs)
    assert tuple(M[2]) == (0, Qv / (2 * LAM), 3 * Qv / LAM)
    assert all(iv.denominators_ok(m) for m in M)


def test_taylor_coefficient_membership(taylor3):
    for n in range(1, 4):
        for e in (taylor3.z3[n], taylor3.z2_shift[n]):
            assert e.x_exp == 1 - 2 * n
            assert e.e4_pole_order() == 0
            assert e.cleared(2 * n).is_polynomial()


def test_z1_membership(taylor3):
    assert iv.z1_membership(3, taylor3) == (True, True, True, True)


def test_quadratic_relation(taylor3):
    assert iv.quadratic_relation_check(3, taylor3)


def test_inversion_matches_display(result3):
    assert all(iv.compare_with_printed(result3).values())
    assert all(result3.checks.values())


def test_leading_terms(result3):
    assert result3.lam_iota[0] == E4
    assert result3.Q_iota[0] == DELTA


def test_no_e6_poles_and_even_pi(result3):
    for p in result3.lam + result3.Q:
        assert p.e6_pole_order() == 0 and p.is_polynomial()
        assert all(i % 2 == 0 for i in p.iota_powers())


def test_weights(result3):
    for n in range(4):
        assert result3.lam_iota[n].weights() == {4 + 4 * n}
        assert result3.Q_iota[n].weights() == {12 + 4 * n}


def test_weights_beyond_display():
    r = iv.invert_period_map(4)
    assert r.checks["weights"]
    assert r.lam_iota[4].weights() == {20}
    assert r.Q_iota[4].weights() == {28}


def test_displayed_z2_factor_leaves_pole():
    # the factor +1/iota in Z2 + 2 tau Z3, taken literally, gives an E6 pole in lambda_1
    td = iv.taylor_coefficients(2, z2_factor=1)
    with pytest.raises(iv.InversionError, match="pole"):
        iv.invert_period_map(2, td)


def test_invalid_nmax():
    with pytest.raises(ValueError):
        iv.invert_period_map(-1)


def test_jacobian_chain():
    rep = iv.jacobian_small()
    assert rep.ok, rep.first_failure()
    assert rep.branch == -1
    assert sympy.simplify(rep.constant - 8 * sympy.sqrt(2) * sympy.I) == 0
    assert sympy.simplify(rep.wronskian_constant + sympy.Rational(16, 3) / sympy.sqrt(6)) == 0
    assert sympy.simplify(rep.wronskian_constant_raw - sympy.Rational(16, 3) / sympy.sqrt(6)) == 0


def test_jacobian_direct_route():
    assert sympy.simplify(iv.jacobian_direct() - 8 * sympy.sqrt(-2)) == 0


@pytest.mark.parametrize("tau", [2j, 3j])
def test_numeric_roundtrip(tau):
    r = iv.numeric_roundtrip(tau, 128)
    assert r < iv.roundtrip_threshold(128)
    assert r < context(128).mpf(2) ** -96


def test_roundtrip_at_i_needs_closed_form():
    with pytest.raises(iv.ConvergenceError):
        iv.numeric_roundtrip(1j, 128)
    assert iv.numeric_roundtrip(1j, 128, method="hyp2f1") < iv.roundtrip_threshold(128)


def test_v_infinity_methods_agree():
    ctx = context(128)
    x = ctx.mpf(5)
    a = iv.v_infinity(x, 128).value
    b = iv.v_infinity(x, 128, method="hyp2f1").value
    assert abs(a - b) < ctx.mpf(2) ** -100


def test_aux_covering_discriminant_at_i():
    # x = J(i) = 1 puts (Q, lam) on the discriminant lam^3 = 27 Q
    Q, t, lam = iv.aux_covering(1j, 1, 0, 128)
    assert abs((lam ** 3 - Q * 27).value) < context(128).mpf(2) ** -90 * abs(lam.value) ** 3
    assert abs(t.value) == 0


def test_roundtrip_guards():
    with pytest.raises(ValueError):
        iv.numeric_roundtrip(-1j)
    with pytest.raises(ValueError):
        iv.aux_covering(1j, 0, 0, 64)
