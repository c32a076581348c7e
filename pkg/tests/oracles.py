"""Independent reference computations used by the tests.

None of these reuse the engine's formulas: scalars go through sympy, torus
products are derived from the commutation rule X_i X_j = q^{l_ij} X_j X_i by
sorting letters, L-mutation uses dense matrices, classical cluster variables
are computed as rational functions, and the U_q(sl_5) model tracks K-factors
explicitly.
"""
from __future__ import annotations

import functools
from collections import deque

import sympy

from qcluster.ncalg import Presentation, complete
from qcluster.qscalar import ONE, QScalar, qpow

t = sympy.Symbol("t")  # t = q^(1/2)


def scalar_to_sympy(s: QScalar):
    return sum((c * t**h for h, c in s.items()), sympy.Integer(0))


def sympy_to_scalar(expr) -> QScalar:
    num, den = sympy.fraction(sympy.together(sympy.expand(expr)))
    # den is a power of t for Laurent polynomials
    shift = sympy.degree(den, t) if den.has(t) else 0
    poly = sympy.Poly(num * sympy.Integer(1) / (den / t**shift), t)
    return QScalar({int(m[0]) - int(shift): int(c) for m, c in poly.terms()})


# -- torus ---------------------------------------------------------------

def letters(a, reverse=False):
    """X^a as a list of (index, +-1) letters, X_1 first unless reversed."""
    out = []
    order = range(len(a) - 1, -1, -1) if reverse else range(len(a))
    for i in order:
        sgn = 1 if a[i] > 0 else -1
        out.extend([(i, sgn)] * abs(a[i]))
    return out


def sort_letters(word, L):
    """Bubble-sort letters into increasing index; returns (h, exponents).

    Every swap X_i^s X_j^t -> X_j^t X_i^s (i > j) contributes q^(l_ij s t).
    """
    word = list(word)
    h = 0
    changed = True
    while changed:
        changed = False
        for p in range(len(word) - 1):
            (i, s), (j, u) = word[p], word[p + 1]
            if i > j:
                h += 2 * L[i][j] * s * u
                word[p], word[p + 1] = word[p + 1], word[p]
                changed = True
    m = len(L)
    exps = [0] * m
    for i, s in word:
        exps[i] += s
    return h, tuple(exps)


def ordered_prefactor_oracle(a, L):
    """h with M(a) = q^(h/2) X^a, fixed by invariance under the bar involution.

    bar reverses words and inverts q; sorting the reversed word back costs
    q^(c/2), and q^(h/2) X^a is bar-invariant exactly when 2h = c.
    """
    c, _ = sort_letters(letters(a, reverse=True), L)
    assert c % 2 == 0
    return c // 2


def frame_product_exponent(a, b, L):
    """h with M(a) M(b) = q^(h/2) M(a+b), computed via ordered monomials."""
    s = tuple(x + y for x, y in zip(a, b))
    h, exps = sort_letters(letters(a) + letters(b), L)
    assert exps == s
    return (
        ordered_prefactor_oracle(a, L)
        + ordered_prefactor_oracle(b, L)
        + h
        - ordered_prefactor_oracle(s, L)
    )


# -- dense L mutation ----------------------------------------------------

def dense_mutate_L(B, mutable_rows, L, k, eps=1):
    m = len(L)
    r = mutable_rows[k]
    E = sympy.eye(m)
    for i in range(m):
        E[i, r] = -1 if i == r else max(0, -eps * B[i][k])
    Lm = sympy.Matrix(L)
    out = E.T * Lm * E
    return tuple(tuple(int(out[i, j]) for j in range(m)) for i in range(m))


def dense_mutate_B(B, mutable_rows, k):
    m, n = len(B), len(B[0]) if B else 0
    r = mutable_rows[k]
    out = []
    for i in range(m):
        row = []
        for j in range(n):
            if i == r or j == k:
                row.append(-B[i][j])
            else:
                bik, bkj = B[i][k], B[r][j]
                # sign form of the mutation rule
                extra = bik * bkj if (bik > 0 and bkj > 0) else -bik * bkj if (bik < 0 and bkj < 0) else 0
                row.append(B[i][j] + extra)
        out.append(tuple(row))
    return tuple(out)


# -- classical cluster variables -----------------------------------------

def classical_variables(seed):
    """BFS over classical seeds; returns {frozenset of mutable exprs: ...} and all edges.

    Each edge record holds the old and new rational functions together with
    the classical binomial exchange.
    """
    xs = sympy.symbols(f"x0:{seed.m}")
    start = (tuple(xs), seed.B.entries)
    edges = []
    seen = {}
    queue = deque([start])

    def key(cluster):
        return frozenset(sympy.srepr(sympy.cancel(cluster[r])) for r in seed.mutable_rows)

    seen[key(start[0])] = start
    while queue:
        cluster, B = queue.popleft()
        for k, r in enumerate(seed.mutable_rows):
            pos = sympy.Integer(1)
            neg = sympy.Integer(1)
            for i in range(seed.m):
                b = B[i][k]
                if b > 0:
                    pos *= cluster[i] ** b
                elif b < 0:
                    neg *= cluster[i] ** (-b)
            new = sympy.cancel((pos + neg) / cluster[r])
            nxt = list(cluster)
            nxt[r] = new
            B2 = dense_mutate_B(B, seed.mutable_rows, k)
            edges.append((cluster, k, new))
            kk = key(nxt)
            if kk not in seen:
                seen[kk] = (tuple(nxt), B2)
                queue.append((tuple(nxt), B2))
    return xs, seen, edges


def laurent_to_sympy(limit: dict, xs):
    return sum(
        (c * sympy.Mul(*[x**e for x, e in zip(xs, a)]) for a, c in limit.items()),
        sympy.Integer(0),
    )


# -- U_q(sl_5) negative part with K bookkeeping ---------------------------

CARTAN = ((2, -1, 0, 0), (-1, 2, -1, 0), (0, -1, 2, -1), (0, 0, -1, 2))


@functools.lru_cache(maxsize=1)
def uq_minus(degree_bound=10):
    U = Presentation(["F1", "F2", "F3", "F4"], name="Uq-sl5-minus")
    for i in range(4):
        for j in range(4):
            if i < j and abs(i - j) > 1:
                U.add_relation(f"[F{i + 1},F{j + 1}]")
            if abs(i - j) == 1:
                U.add_relation(
                    f"F{i + 1}^2*F{j + 1} - (q+q^-1)*F{i + 1}*F{j + 1}*F{i + 1} + F{j + 1}*F{i + 1}^2"
                )
    return U, complete(U, degree_bound)


class UqElement:
    """Finite sum of coeff * F-word * K^lambda, with K_i F_j = q^(-a_ij) F_j K_i."""

    def __init__(self, terms):
        self.terms = {k: v for k, v in terms.items() if v}

    @staticmethod
    def F(i):
        return UqElement({((i,), (0, 0, 0, 0)): ONE})

    @staticmethod
    def K(*idx):
        lam = [0] * 4
        for i in idx:
            lam[i] += 1
        return UqElement({((), tuple(lam)): ONE})

    def __mul__(self, other):
        if isinstance(other, (int, QScalar)):
            return UqElement({k: v * other for k, v in self.terms.items()})
        out = {}
        for (w1, l1), c1 in self.terms.items():
            for (w2, l2), c2 in other.terms.items():
                wt = [0] * 4
                for g in w2:
                    wt[g] += 1
                # moving K^l1 right past F-word w2
                h = -2 * sum(l1[i] * sum(CARTAN[i][j] * wt[j] for j in range(4)) for i in range(4))
                k = (w1 + w2, tuple(a + b for a, b in zip(l1, l2)))
                out[k] = out.get(k, QScalar()) + (c1 * c2).shift(h)
        return UqElement(out)

    __rmul__ = __mul__

    def __add__(self, other):
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, QScalar()) + v
        return UqElement(out)

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def normal(self, R):
        out = {}
        for (w, lam), c in self.terms.items():
            for v, d in R.reduce_word(w).items():
                k = (v, lam)
                out[k] = out.get(k, QScalar()) + c * d
        return UqElement(out)

    def is_zero(self, R):
        return not self.normal(R).terms


def uq_commutator(a, b, s=2):
    return a * b - b * a * qpow(s)


def uq_generators():
    F = UqElement.F
    K = UqElement.K
    qc = uq_commutator
    g = {
        "g11": F(1) * K(1),
        "g21": qc(F(0), F(1)) * K(0, 1),
        "g12": qc(F(2), F(1)) * K(1, 2),
        "g22": qc(F(2), qc(F(0), F(1))) * K(0, 1, 2),
        "g13": qc(F(3), qc(F(2), F(1))) * K(1, 2, 3),
        "g23": qc(F(3), qc(F(2), qc(F(0), F(1)))) * K(0, 1, 2, 3),
    }
    b = {
        "b12": F(0) * K(0),
        "b23": F(1) * K(1),
        "b24": qc(F(2), F(1)) * K(1, 2),
        "b25": qc(F(3), qc(F(2), F(1))) * K(1, 2, 3),
    }
    return g, b


def evaluate(poly, images):
    """Image of an NCPolynomial under generator -> UqElement."""
    total = UqElement({})
    for word, c in poly.terms.items():
        term = UqElement({((), (0, 0, 0, 0)): c})
        for i in word:
            term = term * images[poly.names[i]]
        total = total + term
    return total
