from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from p2periods import modular
from p2periods.corekit.numeric import context
from p2periods.modular import (DELTA, E2, E4, E6, QMPoly, d_tau, eisenstein, q_coeff,
                               qm_to_qseries, q_theta, ramanujan_derive)
from p2periods.suites import diagonal_restriction, invert_j_roundtrip


def brute_sigma(k, n):
    return sum(d ** k for d in range(1, n + 1) if n % d == 0)


@pytest.mark.parametrize("k,c", [(2, -24), (4, 240), (6, -504)])
def test_eisenstein_coefficients(k, c):
    s = eisenstein(k, 40)
    assert q_coeff(s, 0) == 1
    assert all(q_coeff(s, n) == c * brute_sigma(k - 1, n) for n in range(1, 40))


def test_ramanujan_residuals_order_50():
    assert all(r.is_zero() for r in modular.ramanujan_residuals(50).values())


def test_ramanujan_residual_detects_wrong_rule():
    # D E4 = (E2 E4 - E6)/3; dropping the E6 term must be visible
    wrong = qm_to_qseries((E2 * E4) * Fraction(1, 3), 10).truncate(20)
    assert not (q_theta(eisenstein(4, 10)) - wrong).is_zero()


def test_delta_is_cusp_form():
    d = qm_to_qseries(DELTA, 5)
    assert q_coeff(d, 0) == 0 and q_coeff(d, 1) == 1728


monomials = st.tuples(st.integers(0, 3), st.integers(0, 3), st.integers(0, 2),
                      st.fractions(-5, 5, max_denominator=7))
qm_polys = st.lists(monomials, min_size=1, max_size=4).map(
    lambda ms: QMPoly({(0, a, b, c): v for a, b, c, v in ms}))


@given(qm_polys, qm_polys)
def test_derivation_leibniz(p, q):
    assert ramanujan_derive(p * q) == ramanujan_derive(p) * q + p * ramanujan_derive(q)


@given(qm_polys)
def test_commuting_square(p):
    # expanding then differentiating equals differentiating then expanding
    order = 8
    lhs = q_theta(qm_to_qseries(p, order)).truncate(2 * order)
    rhs = qm_to_qseries(ramanujan_derive(p), order).truncate(2 * order)
    assert lhs == rhs


def test_derivative_raises_weight_by_two():
    assert ramanujan_derive(E4).weights() == {6}
    assert ramanujan_derive(DELTA) == E2 * DELTA         # D Delta = E2 Delta


def test_d_tau_carries_iota():
    # d_tau = iota q d/dq
    assert d_tau(E4) == QMPoly.const(1, iota=1) * ramanujan_derive(E4)


def test_qmpoly_declared_weight():
    with pytest.raises(ValueError):
        QMPoly({(0, 1, 0, 0): 1, (0, 0, 1, 0): 1}, weight=2)
    assert (E4 / E6).e6_pole_order() == 1
    with pytest.raises(ZeroDivisionError):
        (E4 + E6).inverse()


def test_theta_identities_order_30():
    assert modular.theta_identities(30) == (True, True)


def test_theta_constants_against_lattice_sum():
    t00, t01, t10 = modular.theta_constants(10)
    # theta_00 = sum w^(n^2): coefficient of w^k counts n with n^2 = k
    for k in range(20):
        assert t00[k] == sum(1 for n in range(-5, 6) if n * n == k)
        assert t01[k] == sum((-1) ** (n % 2) for n in range(-5, 6) if n * n == k)
        assert t10[k] == sum(1 for n in range(-6, 6) if n * n + n == k)


def test_j_series_leading_terms():
    J = modular.j_series(3)
    assert (J[-2], J[0], J[2]) == (Fraction(1, 1728), Fraction(744, 1728),
                                   Fraction(196884, 1728))


def test_invert_j_round_trip():
    assert invert_j_roundtrip(10)
    qu = modular.invert_j(4)
    assert qu[1] == Fraction(1, 1728)


def test_invert_j_matches_hypergeometric_route():
    from p2periods.hypergeom import q_from_hypergeometric
    a = modular.invert_j(10)
    b = q_from_hypergeometric(10)
    assert all(a[k] == b[k] for k in range(1, 10))


@pytest.mark.parametrize("tau", [complex(0.3, 1.1), complex(-0.2, 0.8), complex(0.45, 0.95)])
def test_theta_transformations(tau):
    tol = context(128).mpf(10) ** -30
    res = modular.theta_transformations(tau, 128)
    assert len(res) == 6
    assert all(v < tol for v in res.values()), res


def test_numeric_eisenstein_matches_series():
    ctx = context(128)
    tau = ctx.mpc(0, "1.3")
    s = eisenstein(4, 60)
    q = ctx.exp(2j * ctx.pi * tau)
    approx = sum(ctx.mpf(q_coeff(s, n).numerator) * q ** n for n in range(60))
    assert abs(modular.eisenstein_numeric(4, tau, 128).value - approx) < ctx.mpf(10) ** -30


def test_j_numeric_at_i():
    # J(i) = 1
    assert abs(modular.j_numeric(1j, 128).value - 1) < context(128).mpf(10) ** -30


def test_diagonal_restriction():
    tol = context(128).mpf(10) ** -30
    assert diagonal_restriction(complex(0.1, 1.3), complex(0.7, -0.2), 128) < tol
    assert diagonal_restriction(complex(-0.4, 0.9), 2, 128) < tol


def _rel(a, b):
    return max(abs((u - v).value) / abs(u.value) for u, v in zip(a, b))


def test_two_variable_invariants_are_invariant():
    ctx = context(128)
    tol = ctx.mpf(10) ** -30
    t1, t2, x = ctx.mpc("0.3", "1.1"), ctx.mpc("-0.2", "0.9"), ctx.mpc("0.7", "-0.4")
    base = modular.two_var_invariants(t1, t2, x, 128)
    # swap of the two coordinates
    assert _rel(base, modular.two_var_invariants(t2, t1, x, 128)) < tol
    # S = g1 with chi2 = -1 and (c tau1 + d)(c tau2 + d) = tau1 tau2
    assert _rel(base, modular.two_var_invariants(-1 / t1, -1 / t2, -t1 * t2 * x, 128)) < tol
    # T with chi2 = -1
    assert _rel(base, modular.two_var_invariants(t1 + 1, t2 + 1, -x, 128)) < tol
    # the sign sigma
    assert _rel(base, modular.two_var_invariants(t1, t2, -x, 128)) < tol


def test_numeric_guards():
    with pytest.raises(ValueError):
        modular.theta_numeric(-1j, 64)
    with pytest.raises(ValueError):
        modular.two_var_invariants(1j, 1j, 0, 64)
    with pytest.raises(ValueError):
        eisenstein(3, 5)
