"""
High-precision checks: the hypergeometric period against the modular
parametrization, theta transformations and the two-variable invariants.
"""

from p2periods import inversion, modular
from p2periods.corekit.numeric import context


def main(prec=128):
    ctx = context(prec)
    print("threshold:", inversion.roundtrip_threshold(prec))
    for tau in (3j, 2j, 1.5j):
        print(f"round trip at tau = {tau}:", inversion.numeric_roundtrip(tau, prec))
    print("tau = i (closed form):", inversion.numeric_roundtrip(1j, prec, method="hyp2f1"))

    res = modular.theta_transformations(complex(0.3, 1.1), prec)
    for rule, r in res.items():
        print(f"  {rule}: {ctx.nstr(r, 5)}")

    t1, t2 = ctx.mpc("0.2", "1.1"), ctx.mpc("-0.3", "0.9")
    a = modular.two_var_invariants(t1, t2, 1, prec)
    b = modular.two_var_invariants(-1 / t1, -1 / t2, -t1 * t2, prec)
    print("E4^(2), Delta^(2) under S:", [ctx.nstr(abs((u - v).value), 5) for u, v in zip(a, b)])


if __name__ == "__main__":
    main()
