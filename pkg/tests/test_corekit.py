from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from p2periods.corekit import (NonInvertibleError, SeriesError, TruncatedSeries, binomial_series,
                               exp_series)
from p2periods.corekit.numeric import BigComplex, context, iota, pi
from p2periods.corekit.scalars import GaussianRational, IotaLaurent, Pi2Poly, project_pi2

fracs = st.fractions(min_value=-20, max_value=20, max_denominator=12)
ORDER = 6


def series(coeffs, order=ORDER, var="u"):
    return TruncatedSeries(var, coeffs, 0, order)


coeff_lists = st.lists(fracs, min_size=1, max_size=ORDER)
unit_lists = st.lists(fracs, min_size=0, max_size=ORDER - 1).map(lambda c: [Fraction(1)] + c)


@given(coeff_lists, coeff_lists, coeff_lists)
def test_ring_laws(a, b, c):
    A, B, C = series(a), series(b), series(c)
    assert A + B == B + A
    assert A * B == B * A
    assert (A * B) * C == A * (B * C)
    assert A * (B + C) == A * B + A * C
    assert (A - A).is_zero()


@given(unit_lists)
def test_inverse(a):
    A = series(a)
    assert A * A.inverse() == series([1])


@given(st.lists(fracs, min_size=0, max_size=ORDER - 2))
def test_reversion(rest):
    f = TruncatedSeries("u", [Fraction(0), Fraction(1)] + rest, 0, ORDER)
    g = f.revert()
    ident = TruncatedSeries.monomial("u", 1).truncate(ORDER)
    assert f.compose(g) == ident
    assert g.compose(f) == ident


def test_laurent_inverse_and_zero():
    inv = series([0, 1, 1]).inverse()
    assert inv.val == -1
    assert series([0, 1, 1]) * inv == series([1], order=ORDER - 1)
    with pytest.raises(NonInvertibleError):
        TruncatedSeries.zero("u", ORDER).inverse()


def test_read_past_truncation():
    with pytest.raises(SeriesError):
        series([1, 2])[ORDER]


def test_relative_precision():
    # an exact polynomial times a truncated series keeps the truncated order
    p = TruncatedSeries("u", [1, 2])
    s = series([1, 2], order=4)
    assert (p * s).order == 4
    # valuation raises the known precision of a product
    assert (s.shift(1) * s).order == 5


def test_binomial_square_root():
    r = binomial_series("u", Fraction(1, 2), 10)
    assert r * r == series([1, 1], order=10)


def test_exp_series_additive():
    a = series([0, Fraction(1, 2), 3], order=8)
    b = series([0, -2, Fraction(1, 5)], order=8)
    assert exp_series(a + b) == exp_series(a) * exp_series(b)


def test_nested_coefficients():
    # series in t whose coefficients are series in Q
    q = TruncatedSeries.monomial("Q", 1)
    s = TruncatedSeries("t", [q, q * q], 0, 3)
    assert (s * s)[1] == q * q * q * 2


gauss = st.builds(GaussianRational, fracs, fracs)


@given(gauss, gauss, gauss)
def test_gaussian_field(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    if not b == 0:
        assert (a / b) * b == a
    assert a * a.conjugate() == GaussianRational(a.norm())


def test_iota_projection():
    # iota^2 = (2 pi i)^2 = -4 pi^2
    assert project_pi2(IotaLaurent.iota(2)) == Pi2Poly({1: -4})
    assert project_pi2(IotaLaurent.iota(4, 3)) == Pi2Poly({2: 48})
    with pytest.raises(ValueError):
        project_pi2(IotaLaurent.iota(1))
    with pytest.raises(ValueError):
        project_pi2(IotaLaurent.iota(-2))


def test_numeric_constants():
    ctx = context(128)
    assert abs(iota(128).value - 2 * ctx.pi * ctx.mpc(0, 1)) == 0
    z = BigComplex(ctx.mpc(1, 2), 128)
    assert abs(((z * z) / z - z).value) < ctx.mpf(2) ** -120
    assert abs(pi(128).value - ctx.pi) == 0
