"""
The reflection lattice, its pairing, and the monodromy group.

Conventions: vectors are rows and matrices act from the right, so a
basis row ``E = (E1, E2, E3)`` transforms as ``E R``.  Group elements
of PSL2(Z) are 2x2 integer tuples taken up to sign; a monodromy element
is a pair ``(g, sigma)`` with ``sigma`` in {1, -1}.

Characters are evaluated through the free product decomposition
PSL2(Z) = <A> * <B> with ``B = g1 = [[0,1],[-1,0]]`` of order 2 and
``A = g1 kappa = [[1,1],[-1,0]]`` of order 3.  A word in ``S = g1`` and
``T = [[1,1],[0,1]]`` is found by the Euclidean algorithm and rewritten
with ``T = B A^2``.
"""

from dataclasses import dataclass
from fractions import Fraction

from .corekit.numeric import BigComplex, context
from .corekit.scalars import GaussianRational

# ---------------------------------------------------------------------------
# small exact matrix helpers


def mat_mul(A, B):
    return tuple(tuple(sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(len(B[0])))
                 for i in range(len(A)))


def mat_t(A):
    return tuple(zip(*A))


def mat_scale(c, A):
    return tuple(tuple(c * x for x in row) for row in A)


def mat_eye(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def mat_inv3(A):
    A = [[Fraction(x) for x in r] for r in A]
    det = (A[0][0] * (A[1][1] * A[2][2] - A[1][2] * A[2][1])
           - A[0][1] * (A[1][0] * A[2][2] - A[1][2] * A[2][0])
           + A[0][2] * (A[1][0] * A[2][1] - A[1][1] * A[2][0]))
    if det == 0:
        raise ZeroDivisionError("singular matrix")
    cof = [[(A[(i + 1) % 3][(j + 1) % 3] * A[(i + 2) % 3][(j + 2) % 3]
             - A[(i + 1) % 3][(j + 2) % 3] * A[(i + 2) % 3][(j + 1) % 3]) for j in range(3)]
           for i in range(3)]
    return tuple(tuple(_int_if(cof[j][i] / det) for j in range(3)) for i in range(3))


def _int_if(x):
    return int(x) if x.denominator == 1 else x


def mat_inv2(g):
    (a, b), (c, d) = g
    det = a * d - b * c
    if det != 1:
        raise ValueError("expected determinant one")
    return ((d, -b), (-c, a))


def psl_normalize(g):
    """Representative of +-g with a positive first nonzero entry of the bottom row (or top)."""
    (a, b), (c, d) = g
    key = (c, d) if (c, d) != (0, 0) else (a, b)
    first = key[0] if key[0] != 0 else key[1]
    if first < 0:
        return ((-a, -b), (-c, -d))
    return ((a, b), (c, d))


# ---------------------------------------------------------------------------
# lattice and pairing

E_IN_L = ((1, 2, -1), (-3, 4, -1), (1, -2, 1))   # rows: E_i in the basis (1, L, L^2)
GRAM_L = tuple(tuple(2 + (m - n) ** 2 for n in range(3)) for m in range(3))
ETA = ((0, 0, 4), (0, -8, 0), (4, 0, 0))


@dataclass(frozen=True)
class LatticeVector:
    """A lattice vector with coordinates in the basis (1, L, L^2)."""
    l_coords: tuple

    @classmethod
    def from_e(cls, e):
        l = mat_mul((tuple(Fraction(x) for x in e),), E_IN_L)[0]
        return cls(tuple(_int_if(Fraction(x)) for x in l))

    @property
    def e_coords(self):
        inv = mat_inv3(E_IN_L)
        return tuple(_int_if(Fraction(x)) for x in mat_mul((self.l_coords,), inv)[0])

    def pair(self, other):
        return mat_mul(mat_mul((self.l_coords,), GRAM_L), mat_t((other.l_coords,)))[0][0]


def L_power(m):
    """The class L^m for m = 0, 1, 2."""
    v = [0, 0, 0]
    v[m] = 1
    return LatticeVector(tuple(v))


def gram_matrix(basis="L"):
    """Pairing matrix in the L-basis or, by change of basis, in the E-basis."""
    if basis == "L":
        return GRAM_L
    if basis == "E":
        return mat_mul(mat_mul(E_IN_L, GRAM_L), mat_t(E_IN_L))
    raise ValueError("basis must be 'L' or 'E'")


def reflection(a):
    """Matrix of w_a(x) = x - (a|x) a in the E-basis, row convention.

    Column j holds the E-coordinates of w_a(E_j), so that the row of
    basis vectors transforms as ``E R``.
    """
    if not isinstance(a, LatticeVector):
        a = LatticeVector(tuple(a))
    if a.pair(a) != 2:
        raise ValueError(f"reflection vector needs (a|a) = 2, got {a.pair(a)}")
    cols = []
    for j in range(3):
        ej = LatticeVector.from_e(tuple(1 if i == j else 0 for i in range(3)))
        c = a.pair(ej)
        w = tuple(x - c * y for x, y in zip(ej.l_coords, a.l_coords))
        cols.append(LatticeVector(w).e_coords)
    return mat_t(tuple(cols))


# ---------------------------------------------------------------------------
# symmetric square representation and generators

G1 = ((0, 1), (-1, 0))
KAPPA = ((1, 0), (1, 1))
S_MAT = G1
T_MAT = ((1, 1), (0, 1))
A_MAT = mat_mul(G1, KAPPA)
B_MAT = G1
SWAP = ((0, 1), (1, 0))


def rho(g):
    """Symmetric-square matrix of ``g``, acting on rows from the right."""
    (a, b), (c, d) = g
    if a * d - b * c != 1:
        raise ValueError("rho needs a unimodular matrix")
    return ((a * a, 2 * a * b, b * b),
            (a * c, a * d + b * c, b * d),
            (c * c, 2 * c * d, d * d))


R1 = ((0, 0, -1), (0, 1, 0), (-1, 0, 0))
R2 = ((-1, 2, -1), (-2, 3, -1), (-4, 4, -1))
R3 = ((-4, 4, -1), (-10, 9, -2), (-25, 20, -4))
K = ((1, 0, 0), (1, 1, 0), (1, 2, 1))


def generator_matrices():
    """R1, R2, R3 and K together with the conjugation relations."""
    Kinv = mat_inv3(K)
    checks = {
        "R2=K R1 K^-1": mat_mul(mat_mul(K, R1), Kinv) == R2,
        "R3=K^2 R1 K^-2": mat_mul(mat_mul(mat_mul(K, K), R1), mat_mul(Kinv, Kinv)) == R3,
        "K=rho(kappa)": rho(KAPPA) == K,
        "R1=-rho(g1)": mat_scale(-1, rho(G1)) == R1,
    }
    return {"R1": R1, "R2": R2, "R3": R3, "K": K, "checks": checks}


# ---------------------------------------------------------------------------
# words and characters

def st_word(g):
    """Write ``g`` (up to sign) as a word in S and T.

    Returns a list of ``("S", 1)`` / ``("T", n)`` letters whose product
    equals ``+-g``.
    """
    (a, b), (c, d) = g
    if a * d - b * c != 1:
        raise ValueError("determinant must be one")
    word = []
    M = ((a, b), (c, d))
    while M[1][0] != 0:
        (a, b), (c, d) = M
        n = a // c
        if n:
            word.append(("T", n))
        # T^-n M
        M = ((a - n * c, b - n * d), (c, d))
        (a, b), (c, d) = M
        word.append(("S", 1))
        # S^-1 M with S^-1 = [[0,-1],[1,0]]
        M = ((-c, -d), (a, b))
    (a, b), (c, d) = M
    m = b * a   # M = +-T^(b/a) with a = +-1
    if m:
        word.append(("T", m))
    return word


def word_product(word):
    M = mat_eye(2)
    for letter, n in word:
        if letter == "S":
            base = S_MAT if n > 0 else mat_inv2(S_MAT)
            for _ in range(abs(n)):
                M = mat_mul(M, base)
        else:
            base = T_MAT if n > 0 else mat_inv2(T_MAT)
            for _ in range(abs(n)):
                M = mat_mul(M, base)
    return M


def free_product_word(g):
    """Reduced word in A (order 3) and B (order 2) representing ``g`` in PSL2(Z).

    Letters are ``("A", 1|2)`` and ``("B", 1)``.
    """
    raw = []
    for letter, n in st_word(g):
        if letter == "S":
            raw.append(("B", 1))
        else:
            piece = [("B", 1), ("A", 2)] if n > 0 else [("A", 1), ("B", 1)]
            raw.extend(piece * abs(n))
    out = []
    for letter, n in raw:
        if out and out[-1][0] == letter:
            m = (out[-1][1] + n) % (3 if letter == "A" else 2)
            out.pop()
            if m:
                out.append((letter, m))
        else:
            out.append((letter, n))
    return out


def free_word_product(word):
    M = mat_eye(2)
    for letter, n in word:
        base = A_MAT if letter == "A" else B_MAT
        for _ in range(n):
            M = mat_mul(M, base)
    return M


def characters(g):
    """(chi2(g), chi3 exponent k) with chi3(g) = zeta^k, zeta = exp(2 pi i/3).

    chi2(g1 kappa) = chi3(g1) = 1, chi2(g1) = -1, chi3(g1 kappa) = zeta.
    """
    word = free_product_word(g)
    nb = sum(n for letter, n in word if letter == "B")
    na = sum(n for letter, n in word if letter == "A")
    return (-1) ** (nb % 2), na % 3


def chi2(g):
    return characters(g)[0]


def chi3_complex(g, prec=64):
    k = characters(g)[1]
    ctx = context(prec)
    return BigComplex(ctx.exp(ctx.mpc(0, 2 * ctx.pi * k / 3)), prec)


# ---------------------------------------------------------------------------
# monodromy group

@dataclass(frozen=True)
class GroupElement:
    g: tuple
    sigma: int = 1

    def __post_init__(self):
        (a, b), (c, d) = self.g
        if a * d - b * c != 1:
            raise ValueError("determinant must be one")
        if self.sigma not in (1, -1):
            raise ValueError("sigma must be +1 or -1")

    def __mul__(self, other):
        return GroupElement(mat_mul(self.g, other.g), self.sigma * other.sigma)

    def inverse(self):
        return GroupElement(mat_inv2(self.g), self.sigma)

    def key(self):
        return (psl_normalize(self.g), self.sigma)


def monodromy_of(w):
    """sigma * chi2(g) * rho(g)."""
    if not isinstance(w, GroupElement):
        w = GroupElement(*w)
    return mat_scale(w.sigma * chi2(w.g), rho(w.g))


def reduced_words(max_len):
    """All reduced words in A, B of length at most ``max_len``."""
    yield []
    frontier = [[]]
    for _ in range(max_len):
        new = []
        for w in frontier:
            last = w[-1][0] if w else None
            options = []
            if last != "A":
                options += [("A", 1), ("A", 2)]
            if last != "B":
                options.append(("B", 1))
            for o in options:
                nw = w + [o]
                new.append(nw)
                yield nw
        frontier = new


def injectivity_check(max_len=8):
    """No nontrivial (word, sigma) up to ``max_len`` maps to the identity, and distinct
    elements give distinct matrices."""
    seen = {}
    for w in reduced_words(max_len):
        g = free_word_product(w)
        for sigma in (1, -1):
            m = monodromy_of(GroupElement(g, sigma))
            key = GroupElement(g, sigma).key()
            if m in seen and seen[m] != key:
                return False
            seen[m] = key
    return True


def random_psl(rng, length=6):
    w = []
    for _ in range(length):
        if rng.random() < 0.5:
            w.append(("B", 1))
        else:
            w.append(("A", rng.choice((1, 2))))
    return free_word_product(w)


# ---------------------------------------------------------------------------
# actions on H x C* and H^2 x C*

def _gq(x):
    return GaussianRational.coerce(x)


def phi_small(tau, x):
    tau, x = _gq(tau), _gq(x)
    return (tau * tau * x, -2 * tau * x, x)


def phi_big(tau1, tau2, y):
    tau1, tau2, y = _gq(tau1), _gq(tau2), _gq(y)
    return (tau1 * tau2 * y, -(tau1 + tau2) * y, y)


def row_times(v, M):
    return tuple(sum((v[i] * M[i][j] for i in range(3)), GaussianRational(0)) for j in range(3))


def act_small(w, tau, z):
    """(g, sigma).(tau, z) = (g tau, sigma chi2(g) (c tau + d)^2 z)."""
    (a, b), (c, d) = w.g
    tau, z = _gq(tau), _gq(z)
    den = c * tau + d
    return (a * tau + b) / den, w.sigma * chi2(w.g) * den * den * z


def act_big(w, tau1, tau2, y):
    """(g, sigma).(tau1, tau2, y), each tau transformed by its own Mobius factor."""
    (a, b), (c, d) = w.g
    tau1, tau2, y = _gq(tau1), _gq(tau2), _gq(y)
    d1 = c * tau1 + d
    d2 = c * tau2 + d
    return (a * tau1 + b) / d1, (a * tau2 + b) / d2, w.sigma * chi2(w.g) * d1 * d2 * y


def conjugate_by_swap(g):
    """s g^-1 s^-1 with s the coordinate swap."""
    return mat_mul(mat_mul(SWAP, mat_inv2(g)), SWAP)


def w_action_small(w, tau, z):
    """Returns ``(tau', z')`` and whether Phi_small(tau, z) w = Phi_small((s g^-1 s^-1, sigma).(tau, z))."""
    if not isinstance(w, GroupElement):
        w = GroupElement(*w)
    image = act_small(w, tau, z)
    lhs = row_times(phi_small(tau, z), monodromy_of(w))
    w2 = GroupElement(conjugate_by_swap(w.g), w.sigma)
    rhs = phi_small(*act_small(w2, tau, z))
    return image, lhs == rhs


def w_action_big(w, tau1, tau2, y):
    """Big-domain analogue of :func:`w_action_small`."""
    if not isinstance(w, GroupElement):
        w = GroupElement(*w)
    image = act_big(w, tau1, tau2, y)
    lhs = row_times(phi_big(tau1, tau2, y), monodromy_of(w))
    w2 = GroupElement(conjugate_by_swap(w.g), w.sigma)
    rhs = phi_big(*act_big(w2, tau1, tau2, y))
    return image, lhs == rhs


def printed_big_action(w, tau1, tau2, y):
    """The big action with the second Mobius denominator c tau1 + d, as printed."""
    (a, b), (c, d) = w.g
    tau1, tau2, y = _gq(tau1), _gq(tau2), _gq(y)
    d1 = c * tau1 + d
    return (a * tau1 + b) / d1, (a * tau2 + b) / d1, w.sigma * chi2(w.g) * d1 * (c * tau2 + d) * y


# ---------------------------------------------------------------------------
# Gamma-class modified Chern character

def _pmul(p, q):
    out = [p[0] * 0] * 3
    for i in range(3):
        for j in range(3 - i):
            out[i + j] = out[i + j] + p[i] * q[j]
    return out


def psi_gamma_class(m, Q, prec):
    """Coefficients of (1, p, p^2) in Gamma(1+p)^3 exp(-p log Q) exp(2 pi i m p)/sqrt(2 pi)."""
    ctx = context(prec)
    Q = BigComplex(Q, prec)
    if abs(Q.value) == 0:
        raise ValueError("Q must be non-zero")
    g = ctx.euler
    gam = [ctx.mpc(1), ctx.mpc(-g), ctx.mpc((g * g + ctx.pi ** 2 / 6) / 2)]
    lq = ctx.log(Q.value)
    eq = [ctx.mpc(1), -lq, lq * lq / 2]
    im = ctx.mpc(0, 2 * ctx.pi) * m
    em = [ctx.mpc(1), im, im * im / 2]
    r = _pmul(_pmul(_pmul(gam, gam), gam), _pmul(eq, em))
    c = 1 / ctx.sqrt(2 * ctx.pi)
    return tuple(BigComplex(x * c, prec) for x in r)


def lattice_coordinates(vec, prec):
    """Solve vec = sum c_k Psi(L^k), k = 0..2, at Q = 1."""
    ctx = context(prec)
    cols = [psi_gamma_class(k, 1, prec) for k in range(3)]
    A = ctx.matrix([[cols[k][i].value for k in range(3)] for i in range(3)])
    b = ctx.matrix([v.value for v in vec])
    sol = ctx.lu_solve(A, b)
    return tuple(BigComplex(sol[i], prec) for i in range(3))
