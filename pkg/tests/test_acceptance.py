"""
Acceptance criteria 1-10.

Each test records one PASS/FAIL line, printed in the terminal summary
(and to stdout when run with ``-s``).
"""

import time
from contextlib import contextmanager

import pytest
import sympy

from conftest import ACCEPTANCE
from p2periods import connection, gw_potential, hypergeom, inversion, modular, suites
from p2periods.connection import RF
from p2periods.corekit.numeric import context


@contextmanager
def criterion(k, title, limit=None):
    t0 = time.perf_counter()
    note = {}
    try:
        yield note
        dt = time.perf_counter() - t0
        if limit is not None:
            assert dt < limit, f"runtime {dt:.2f}s exceeds {limit}s"
    except BaseException as exc:
        dt = time.perf_counter() - t0
        line = f"CRITERION {k:2d}: FAIL  {title} ({dt:.2f}s): {exc!s:.200}"
        ACCEPTANCE[k] = line
        print(line)
        raise
    extra = f" [{note['note']}]" if "note" in note else ""
    line = f"CRITERION {k:2d}: PASS  {title} ({dt:.2f}s){extra}"
    ACCEPTANCE[k] = line
    print(line)


def test_criterion_01_gromov_witten():
    with criterion(1, "N_1..N_6 = 1, 1, 12, 620, 87304, 26312976", limit=1.0):
        assert gw_potential.kontsevich_numbers(6).N == (1, 1, 12, 620, 87304, 26312976)


def test_criterion_02_wdvv():
    with criterion(2, "F333 = F223^2 - F222 F233 to t-order 20", limit=5.0):
        table = gw_potential.kontsevich_numbers(7)
        assert gw_potential.required_degree((3, 3, 3), 20) == 7
        assert gw_potential.wdvv_check(20, table=table)


def test_criterion_03_inversion():
    with criterion(3, "lambda_0..3 and Q_0..3 equal the displayed quasi-modular forms",
                   limit=300.0):
        res = inversion.invert_period_map(3)
        assert res.lam_iota[0] == modular.E4
        assert res.Q_iota[0] == modular.E4 ** 3 - modular.E6 ** 2
        cmp = inversion.compare_with_printed(res)
        assert len(cmp) == 8 and all(cmp.values()), cmp
        assert all(res.checks.values()), res.checks


def test_criterion_04_symmetric_square():
    with criterion(4, "symmetric square coefficients and z_i = products to order 15",
                   limit=10.0):
        rep = hypergeom.symmetric_square(15)
        assert rep.printed_match
        assert all(r == 0 for r in rep.operator_residual)
        assert rep.series_residuals == {"z1-v^2": True, "z2-uv": True, "z3-u^2": True}
        s3 = hypergeom.solve_3f2(15)
        assert [z.log_degree for z in s3.z] == [0, 1, 2]


def test_criterion_05_connection_matrix():
    with criterion(5, "C_inf equals the displayed matrix and C_inf K = K_inf C_inf"):
        C = hypergeom.connection_matrix()
        P = hypergeom.printed_connection_matrix()
        assert all(C[i, j] == P[i][j] for i in range(3) for j in range(3))
        assert all(e == 0 for row in hypergeom.commutation_defect(C) for e in row)


def test_criterion_06_monodromy():
    with criterion(6, "monodromy generators, relations, pairing, characters, equivariance"):
        res = suites.suite_monodromy(samples=50, pairs=200, seed=2024)
        bad = res.first_failure()
        assert bad is None, bad and bad.name


def test_criterion_07_modular():
    with criterion(7, "Ramanujan equations, theta identities, J-series, invert_j"):
        assert all(r.is_zero() for r in modular.ramanujan_residuals(50).values())
        assert modular.theta_identities(30) == (True, True)
        res = suites.suite_thetas(order=50, theta_order=30)
        names = ("J = (q^-1 + 744 + 196884 q + ...)/1728", "invert_j round trip to order 10")
        assert all(c.ok for c in res.checks if c.name in names)
        assert suites.invert_j_roundtrip(10)


def test_criterion_08_operator_pipeline():
    with criterion(8, "T, det T, L at t = 0, hypergeometric reduction, l_i") as note:
        mism, T0, P0 = connection.compare_T_at_zero()
        # every entry except (1,1) equals the display; (1,1) is covered by the strict xfail below
        assert set(mism) <= {(0, 0)}
        assert T0[0][0] == RF(1)
        rep = connection.matrix_T(4)
        assert rep.mismatches == () and rep.det_ok
        L = connection.operator_L(4)
        assert tuple(c[0] for c in L.L.coeffs) == connection.printed_L_at_zero()
        assert L.polynomial_ok and L.degree_ok and L.weight_ok
        assert L.lam_degrees == (2, 3, 4)
        assert connection.hge_reduction_rule().proportional
        if mism:
            note["note"] = "displayed T(t=0) (1,1) entry differs; literal check is a strict xfail"


@pytest.mark.xfail(strict=True, reason="displayed T(t=0) has 1/(lam^3-27Q) in entry (1,1); "
                                       "the construction and det T give 1")
def test_criterion_08_T_at_zero_literal_display():
    mism, T0, P0 = connection.compare_T_at_zero()
    assert T0[0][0] == P0[0][0]


def test_criterion_09_consistency():
    with criterion(9, "quadratic relation to n = 3, Jacobian chain, Wronskian constant") as note:
        td = inversion.taylor_coefficients(3)
        assert inversion.quadratic_relation_check(3, td)
        rep = inversion.jacobian_small()
        assert rep.ok, rep.first_failure()
        assert sympy.simplify(rep.constant - 8 * sympy.sqrt(-2)) == 0
        assert sympy.simplify(rep.wronskian_constant + sympy.Rational(16, 3) / sympy.sqrt(6)) == 0
        note["note"] = f"Wronskian sign fixed by the period branch omega = {rep.branch}"


def test_criterion_10_numerics():
    with criterion(10, "round trip < 2^-96 at 2i, 3i; theta rules and diagonal to 30 digits"):
        ctx = context(128)
        for tau in (2j, 3j):
            assert inversion.numeric_roundtrip(tau, 128) < ctx.mpf(2) ** -96
        tol = ctx.mpf(10) ** -30
        for tau in (complex(0.3, 1.1), complex(-0.2, 0.8)):
            assert max(modular.theta_transformations(tau, 128).values()) < tol
        assert suites.diagonal_restriction(complex(0.1, 1.3), complex(0.7, -0.2), 128) < tol


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-s"]))
