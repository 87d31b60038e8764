"""
From Gromov-Witten numbers to the quasi-modular inversion.

Runs the exact pipeline: the potential, the operator L, the Taylor
coefficients of the period map and the inversion lambda_n, Q_n.
"""

import time

from p2periods import connection, gw_potential, inversion


def main(n_max=3):
    print("N_d:", gw_potential.kontsevich_numbers(6).N)
    print("WDVV to t^20:", gw_potential.wdvv_check(20))

    L = connection.operator_L(2)
    print("L at t = 0:", tuple(c[0] for c in L.L.coeffs))

    t0 = time.perf_counter()
    td = inversion.taylor_coefficients(n_max)
    for n in range(1, n_max + 1):
        print(f"Z3^({n}) =", td.z3[n].terms[0])
    res = inversion.invert_period_map(n_max, td)
    print(f"inversion up to n = {n_max} in {time.perf_counter() - t0:.1f}s")
    print(res.t_relation)
    for n in range(n_max + 1):
        print(f"lambda_{n} =", res.lam[n])
        print(f"Q_{n} =", res.Q[n])
    print("agrees with the displayed tables:", inversion.compare_with_printed(res))
    print("Z2^2 - 4 Z1 Z3 = -32 t:", inversion.quadratic_relation_check(n_max, td))


if __name__ == "__main__":
    main()
