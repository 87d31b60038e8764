import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from p2periods import monodromy as md
from p2periods.corekit.numeric import context
from p2periods.corekit.scalars import GaussianRational

letters = st.one_of(st.just(("B", 1)), st.tuples(st.just("A"), st.sampled_from((1, 2))))
psl = st.lists(letters, min_size=0, max_size=10).map(md.free_word_product)
fr = st.fractions(-6, 6, max_denominator=9)
upper = st.builds(GaussianRational, fr, st.fractions(Fraction(1, 9), 6, max_denominator=9))
nonzero = st.builds(GaussianRational, fr, fr).filter(lambda z: not z == 0)
signs = st.sampled_from((1, -1))


def same_psl(g, h):
    return md.psl_normalize(g) == md.psl_normalize(h)


def test_generators_printed():
    gm = md.generator_matrices()
    assert all(gm["checks"].values())
    assert md.R1 == ((0, 0, -1), (0, 1, 0), (-1, 0, 0))
    assert md.K == ((1, 0, 0), (1, 1, 0), (1, 2, 1))


@pytest.mark.parametrize("R", [md.R1, md.R2, md.R3])
def test_reflections_preserve_eta(R):
    assert md.mat_mul(md.mat_mul(md.mat_t(R), md.ETA), R) == md.ETA
    assert md.mat_mul(R, R) == md.mat_eye(3)


def test_reflections_from_line_bundles():
    for m, R in enumerate((md.R1, md.R2, md.R3)):
        assert md.reflection(md.L_power(m)) == R


def test_gram_matrices():
    assert md.GRAM_L == ((2, 3, 6), (3, 2, 3), (6, 3, 2))
    assert md.gram_matrix("E") == md.ETA
    with pytest.raises(ValueError):
        md.reflection((1, 1, 0))          # (a|a) = 10


def test_k_is_cyclic_on_reflections():
    Kinv = md.mat_inv3(md.K)
    K2, K2inv = md.mat_mul(md.K, md.K), md.mat_mul(Kinv, Kinv)
    assert md.mat_mul(md.mat_mul(md.K, md.R1), Kinv) == md.R2
    assert md.mat_mul(md.mat_mul(K2, md.R1), K2inv) == md.R3


@given(psl, psl)
def test_rho_homomorphism(g, h):
    assert md.rho(md.mat_mul(g, h)) == md.mat_mul(md.rho(g), md.rho(h))


@given(psl, psl)
def test_characters_multiplicative(g, h):
    a1, k1 = md.characters(g)
    a2, k2 = md.characters(h)
    a3, k3 = md.characters(md.mat_mul(g, h))
    assert a3 == a1 * a2 and k3 == (k1 + k2) % 3


@given(psl)
def test_characters_even(g):
    assert md.characters(g) == md.characters(md.mat_scale(-1, g))


def test_characters_on_relations():
    S, T = md.S_MAT, md.T_MAT
    ST = md.mat_mul(S, T)
    assert md.characters(md.mat_mul(S, S)) == (1, 0)
    assert md.characters(md.mat_mul(md.mat_mul(ST, ST), ST)) == (1, 0)
    assert md.characters(md.G1) == (-1, 0)
    assert md.characters(md.A_MAT) == (1, 1)
    assert md.characters(md.KAPPA) == (-1, 1)


@given(psl)
def test_word_decompositions(g):
    assert same_psl(md.word_product(md.st_word(g)), g)
    assert same_psl(md.free_word_product(md.free_product_word(g)), g)


@given(psl, signs)
def test_monodromy_homomorphism(g, s):
    h = md.mat_mul(g, md.T_MAT)
    w1, w2 = md.GroupElement(g, s), md.GroupElement(h, -1)
    assert md.monodromy_of(w1 * w2) == md.mat_mul(md.monodromy_of(w1), md.monodromy_of(w2))


def test_monodromy_generators():
    assert md.monodromy_of((md.G1, 1)) == md.R1


def test_injectivity():
    assert md.injectivity_check(8)


@given(psl, signs, upper, nonzero)
def test_small_action_equivariant(g, s, tau, z):
    assert md.w_action_small(md.GroupElement(g, s), tau, z)[1]


@given(psl, signs, upper, upper, nonzero)
def test_big_action_equivariant(g, s, t1, t2, y):
    assert md.w_action_big(md.GroupElement(g, s), t1, t2, y)[1]


def test_printed_big_action_is_not_equivariant():
    # the second Mobius factor must be c tau2 + d; the c tau1 + d version breaks the identity
    rng = random.Random(1)
    broken = 0
    for _ in range(20):
        w = md.GroupElement(md.random_psl(rng), 1)
        t1 = GaussianRational(Fraction(rng.randint(-9, 9), 7), Fraction(rng.randint(1, 9), 5))
        t2 = GaussianRational(Fraction(rng.randint(-9, 9), 3), Fraction(rng.randint(1, 9), 4))
        y = GaussianRational(1, 1)
        lhs = md.row_times(md.phi_big(t1, t2, y), md.monodromy_of(w))
        w2 = md.GroupElement(md.conjugate_by_swap(w.g), w.sigma)
        if lhs != md.phi_big(*md.printed_big_action(w2, t1, t2, y)):
            broken += 1
        assert lhs == md.phi_big(*md.act_big(w2, t1, t2, y))
    assert broken > 0


def test_action_preserves_upper_half_plane():
    rng = random.Random(3)
    for _ in range(20):
        w = md.GroupElement(md.random_psl(rng), 1)
        t, _ = md.act_small(w, GaussianRational(Fraction(1, 3), 2), 1)
        assert t.im > 0


def test_gamma_class_lattice():
    ctx = context(128)
    tol = ctx.mpf(10) ** -30
    c = md.lattice_coordinates(md.psi_gamma_class(3, 1, 128), 128)
    for got, want in zip(c, (1, -3, 3)):
        assert abs(got.value - want) < tol
    # Psi(L^m) for m = 0, 1, 2 are the coordinate vectors
    for m in range(3):
        c = md.lattice_coordinates(md.psi_gamma_class(m, 1, 128), 128)
        assert all(abs(c[k].value - (1 if k == m else 0)) < tol for k in range(3))


def test_group_element_validation():
    with pytest.raises(ValueError):
        md.GroupElement(((1, 1), (1, 1)))
    with pytest.raises(ValueError):
        md.GroupElement(md.G1, 2)
