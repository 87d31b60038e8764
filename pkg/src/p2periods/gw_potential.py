r"""
Genus-0 Gromov-Witten potential of the projective plane.

The quantum part of the potential is

.. math::

    f(t_2, t_3) = \sum_{d\ge 1} N_d \frac{Q^d\, t^{3d-1}}{(3d-1)!},
    \qquad Q = e^{t_2},\ t = t_3,

so that differentiating in :math:`t_2` acts as :math:`Q\partial_Q`.  All
derivatives with at least two indices in {2, 3} only see this part.
"""

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .corekit import TruncatedSeries


@dataclass(frozen=True)
class GWTable:
    d_max: int
    N: tuple

    def __getitem__(self, d):
        return self.N[d - 1]


def kontsevich_numbers(d_max):
    """Numbers of rational degree-d plane curves through 3d-1 points.

    >>> kontsevich_numbers(4).N
    (1, 1, 12, 620)
    """
    if d_max < 1:
        raise ValueError("d_max must be at least 1")
    N = [0, 1]
    for d in range(2, d_max + 1):
        s = 0
        for m in range(1, d):
            k = d - m
            s += (comb(3 * d - 4, 3 * m - 2) * m * m * k * k
                  - comb(3 * d - 4, 3 * m - 3) * m * k ** 3) * N[m] * N[k]
        N.append(s)
    return GWTable(d_max, tuple(N[1:]))


def required_degree(indices, t_order):
    """Largest degree contributing below ``t^t_order``."""
    threes = Counter(indices)[3]
    return (t_order + threes) // 3


@dataclass(frozen=True)
class PotentialDerivative:
    indices: tuple
    series: TruncatedSeries

    def at_zero(self):
        """Value at t = 0 as a polynomial in Q."""
        return self.series[0] if self.series.order else None


def potential_derivative(indices, t_order, d_max=None, table=None):
    """Derivative of the potential as a t-series with polynomial-in-Q coefficients.

    ``indices`` is a multiset over {2, 3}; each 2 acts as Q d/dQ and each
    3 as d/dt.  The coefficients are exact ``TruncatedSeries`` in ``Q``.
    """
    indices = tuple(sorted(indices))
    if len(indices) < 2 or any(i not in (2, 3) for i in indices):
        raise ValueError(f"indices must be at least two entries from {{2, 3}}, got {indices}")
    cnt = Counter(indices)
    twos, threes = cnt[2], cnt[3]
    need = required_degree(indices, t_order)
    if table is None:
        d_max = max(need, 1) if d_max is None else d_max
        if d_max < need:
            raise ValueError(f"t_order {t_order} needs degrees up to {need}, got d_max={d_max}")
        table = kontsevich_numbers(max(d_max, 1))
    elif table.d_max < need:
        raise ValueError(f"t_order {t_order} needs degrees up to {need}, table has {table.d_max}")
    terms = {}
    for d in range(1, need + 1):
        k = 3 * d - 1 - threes
        if k < 0 or k >= t_order:
            continue
        c = Fraction(table[d] * d ** twos, factorial(k))
        terms[k] = TruncatedSeries.monomial("Q", d, c)
    return PotentialDerivative(indices, TruncatedSeries.from_dict("t", terms, t_order))


def wdvv_check(t_order, table=None):
    """Exact check of F333 = F233^2 - F222 F233 to ``t^t_order``."""
    if t_order < 1:
        raise ValueError("t_order must be positive")
    if table is None:
        table = kontsevich_numbers(max(1, required_degree((3, 3, 3), t_order)))

    def F(*idx):
        return potential_derivative(idx, t_order, table=table).series

    F223 = F(2, 2, 3)
    lhs = F(3, 3, 3)
    rhs = F223 * F223 - F(2, 2, 2) * F(2, 3, 3)
    return (lhs - rhs).is_zero()


def homogeneity_degree(pd):
    """The common value of 3d - k over monomials Q^d t^k, or None if mixed."""
    degs = set()
    for k, c in pd.series.items():
        for d, _ in c.items():
            degs.add(3 * d - k)
    if len(degs) > 1:
        return None
    return degs.pop() if degs else None
