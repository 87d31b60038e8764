"""
The monodromy group: reflections from line bundles, the symmetric square
representation, characters and the action on the period domain.
"""

import random
from fractions import Fraction

from p2periods import monodromy as md
from p2periods.corekit.scalars import GaussianRational


def main():
    for m in range(3):
        print(f"reflection in L^{m}:", md.reflection(md.L_power(m)))
    print("Gram matrix in the E basis:", md.gram_matrix("E"))
    print("relations:", md.generator_matrices()["checks"])

    rng = random.Random(7)
    g = md.random_psl(rng, 5)
    print("g =", g)
    print("  as a word in S, T:", md.st_word(g))
    print("  as a word in A, B:", md.free_product_word(g))
    print("  characters (chi2, k):", md.characters(g))
    w = md.GroupElement(g, -1)
    print("  monodromy matrix:", md.monodromy_of(w))

    tau = GaussianRational(Fraction(1, 3), Fraction(5, 4))
    (tau2, z2), ok = md.w_action_small(w, tau, GaussianRational(2))
    print("  acts on (tau, x) = (1/3 + 5i/4, 2) as", tau2, z2, "equivariant:", ok)


if __name__ == "__main__":
    main()
