"""Independent reference computations used by the tests.

Nothing here calls into the package's algorithms; each oracle is a
different route to the same answer.
"""

import itertools
import math
from fractions import Fraction

import mpmath


# -- continued fractions -----------------------------------------------------


def sqrt_cf_float(D, terms, prec=None):
    """First ``terms`` partial quotients of sqrt(D) by high-precision floors."""
    # each quotient a costs about 2 log2(a) + 2 bits of the working precision
    prec = prec or 200 + terms * (4 + 2 * D.bit_length())
    with mpmath.workprec(prec):
        x = mpmath.sqrt(D)
        out = []
        for _ in range(terms):
            a = int(mpmath.floor(x))
            out.append(a)
            x = 1 / (x - a)
    return out


def convergents_by_recurrence(terms):
    out = []
    p0, p1, q0, q1 = 0, 1, 1, 0
    for a in terms:
        p0, p1 = p1, a * p1 + p0
        q0, q1 = q1, a * q1 + q0
        out.append(Fraction(p1, q1))
    return out


# -- SL2(Z) search -----------------------------------------------------------


def brute_sl2(x, y, B=50, det=(1,)):
    """All (a, b, c, d) with entries in [-B, B], ad - bc in ``det`` and
    y = (a x + b)/(c x + d), found by a float filter then exact check."""
    xf, yf = float(x), float(y)
    hits = []
    for c in range(-B, B + 1):
        for d in range(-B, B + 1):
            if c == 0 and d == 0:
                continue
            v = yf * (c * xf + d)
            for a in range(-B, B + 1):
                b = round(v - a * xf)
                if abs(b) > B or abs(a * xf + b - v) > 1e-6 * (1 + abs(v)):
                    continue
                if a * d - b * c not in det:
                    continue
                if (a * x + b) == y * (c * x + d):
                    hits.append((a, b, c, d))
    return hits


# -- elliptic functions ------------------------------------------------------


def j_from_lambda(lam):
    return 256 * (lam**2 - lam + 1) ** 3 / (lam**2 * (lam - 1) ** 2)


def _sigma(k, n):
    return sum(d**k for d in range(1, n + 1) if n % d == 0)


def eisenstein_qseries(tau, terms=80):
    """G4, G6 for the lattice Z + Z tau from the E4, E6 q-expansions."""
    q = mpmath.exp(2j * mpmath.pi * tau)
    e4 = 1 + 240 * sum(_sigma(3, n) * q**n for n in range(1, terms))
    e6 = 1 - 504 * sum(_sigma(5, n) * q**n for n in range(1, terms))
    G4 = mpmath.pi**4 / 45 * e4
    G6 = 2 * mpmath.pi**6 / 945 * e6
    return G4, G6


def g2_g3_qseries(tau, terms=80):
    G4, G6 = eisenstein_qseries(tau, terms)
    return 60 * G4, 140 * G6


def j_qseries(tau, terms=80):
    g2, g3 = g2_g3_qseries(tau, terms)
    return 1728 * g2**3 / (g2**3 - 27 * g3**2)


def wp_theta(z, tau):
    """p(z) for periods 1, tau from Jacobi theta functions."""
    q = mpmath.exp(1j * mpmath.pi * tau)
    t2 = mpmath.jtheta(2, 0, q)
    t3 = mpmath.jtheta(3, 0, q)
    pz = mpmath.pi * z
    ratio = mpmath.jtheta(4, pz, q) / mpmath.jtheta(1, pz, q)
    return (mpmath.pi * t2 * t3 * ratio) ** 2 - mpmath.pi**2 / 3 * (t2**4 + t3**4)


# -- rewriting ---------------------------------------------------------------

# REL2 written out directly: lhs -> (q exponent, rhs)
REL2_RULES = {
    (3, 1): (1, (1, 3)),
    (4, 2): (1, (2, 4)),
    (4, 1): (-1, (1, 4)),
    (3, 2): (-1, (2, 3)),
    (1, 2): (0, ()),
    (2, 1): (0, ()),
    (3, 4): (0, ()),
    (4, 3): (0, ()),
}


def all_normal_forms(word, rules=REL2_RULES):
    """Every irreducible (k, word) reachable by rewriting anywhere, in any order."""
    seen = set()
    stack = [(0, tuple(word))]
    finals = set()
    while stack:
        k, w = stack.pop()
        if (k, w) in seen:
            continue
        seen.add((k, w))
        moved = False
        for i in range(len(w) - 1):
            r = rules.get(w[i : i + 2])
            if r is not None:
                moved = True
                stack.append((k + r[0], w[:i] + r[1] + w[i + 2 :]))
        if not moved:
            finals.add((k, w))
    return finals


def words(max_len, alphabet=(1, 2, 3, 4)):
    for n in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=n)


def clock_shift(n):
    """Matrices U, V with V U = w U V, w = exp(2 pi i / n)."""
    w = mpmath.exp(2j * mpmath.pi / n)
    U = mpmath.diag([w**j for j in range(n)])
    V = mpmath.zeros(n, n)
    for j in range(n):
        V[(j + 1) % n, j] = 1
    # V U V^-1 = w^-1 U for this shift; use V^-1 as the second generator
    return w, U, V**-1


def word_matrix(word, n):
    w, U, V = clock_shift(n)
    gens = {1: U, 2: U**-1, 3: V, 4: V**-1}
    M = mpmath.eye(n)
    for g in word:
        M = M * gens[g]
    return M


def matrix_close(A, B, tol=1e-10):
    return mpmath.mnorm(A - B, 1) < tol
