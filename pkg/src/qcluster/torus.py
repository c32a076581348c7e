"""Based quantum torus arithmetic.

A :class:`TorusElement` is a finite sum of based monomials ``coeff * M(a)``
over a fixed skew-symmetric frame ``L``. Based monomials multiply by::

    M(a) M(b) = q^((a^T L b)/2) M(a + b)

and relate to ordered products through::

    M(a) = q^(1/2 sum_{i<j} a_i a_j L[j][i]) X_1^a_1 ... X_m^a_m
"""
from __future__ import annotations

from .qscalar import ONE, QScalar, qpow


class DivisionError(ArithmeticError):
    """Exact division left a nonzero remainder."""


def _freeze(L):
    return tuple(tuple(int(x) for x in row) for row in L)


def bilinear(a, L, b) -> int:
    """a^T L b, counted in q^(1/2) units when used as an exponent."""
    total = 0
    for i, ai in enumerate(a):
        if ai:
            row = L[i]
            total += ai * sum(row[j] * bj for j, bj in enumerate(b) if bj)
    return total


def ordered_prefactor(a, L) -> int:
    """Half-exponent h with M(a) = q^(h/2) X_1^a_1 ... X_m^a_m."""
    m = len(a)
    return sum(
        a[i] * a[j] * L[j][i] for i in range(m) if a[i] for j in range(i + 1, m) if a[j]
    )


def _deglex(a):
    return (sum(a), a)


class TorusElement:
    __slots__ = ("frame", "_terms", "_key")

    def __init__(self, frame, terms=None):
        self.frame = frame if isinstance(frame, tuple) else _freeze(frame)
        self._terms = {}
        self._key = None
        for a, c in (terms or {}).items():
            c = QScalar.coerce(c)
            if c:
                a = tuple(int(x) for x in a)
                if len(a) != len(self.frame):
                    raise ValueError(f"exponent {a} does not match frame of rank {len(self.frame)}")
                self._terms[a] = c

    @classmethod
    def _raw(cls, frame, terms):
        obj = cls.__new__(cls)
        obj.frame = frame
        obj._terms = terms
        obj._key = None
        return obj

    @property
    def rank(self):
        return len(self.frame)

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda t: _deglex(t[0]), reverse=True)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def key(self):
        """Hashable, totally ordered canonical form."""
        if self._key is None:
            self._key = tuple(sorted((a, c.key()) for a, c in self._terms.items()))
        return self._key

    def __eq__(self, other):
        if not isinstance(other, TorusElement):
            return NotImplemented
        return self.frame == other.frame and self._terms == other._terms

    def __hash__(self):
        return hash(self.key())

    def _check(self, other):
        if not isinstance(other, TorusElement):
            raise TypeError("expected a TorusElement")
        if other.frame != self.frame:
            raise ValueError("torus elements live over different frames")

    def __add__(self, other):
        self._check(other)
        out = dict(self._terms)
        for a, c in other._terms.items():
            s = out.get(a)
            s = c if s is None else s + c
            if s:
                out[a] = s
            else:
                out.pop(a, None)
        return TorusElement._raw(self.frame, out)

    def __neg__(self):
        return TorusElement._raw(self.frame, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s) -> "TorusElement":
        s = QScalar.coerce(s)
        if not s:
            return TorusElement._raw(self.frame, {})
        return TorusElement._raw(self.frame, {a: c * s for a, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, QScalar)):
            return self.scale(other)
        return torus_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, QScalar)):
            return self.scale(other)
        return NotImplemented

    def leading(self):
        a = max(self._terms, key=_deglex)
        return a, self._terms[a]

    def trailing(self):
        a = min(self._terms, key=_deglex)
        return a, self._terms[a]

    def to_ordered(self):
        """Terms as (coefficient of the ordered product X^a, a)."""
        return [(c.shift(ordered_prefactor(a, self.frame)), a) for a, c in self.items()]

    def format(self, names=None, ordered=True):
        """Render as sum of coeff*X^a; ordered=True uses ordered products."""
        if not self._terms:
            return "0"
        names = names or [f"X{i + 1}" for i in range(self.rank)]
        pieces = []
        src = self.to_ordered() if ordered else [(c, a) for a, c in self.items()]
        for c, a in src:
            mon = _format_monomial(a, names) if ordered else f"M({','.join(map(str, a))})"
            pieces.append(_join_coeff(c, mon))
        out = pieces[0]
        for p in pieces[1:]:
            out += " - " + p[1:] if p.startswith("-") else " + " + p
        return out

    def __repr__(self):
        return f"TorusElement({self.format(ordered=False)})"


def _format_monomial(a, names):
    parts = []
    for name, e in zip(names, a):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


def _join_coeff(c: QScalar, mon: str) -> str:
    if mon == "1":
        return str(c)
    if c == 1:
        return mon
    if c == -1:
        return "-" + mon
    if len(c.items()) == 1:
        return f"{c}*{mon}"
    return f"({c})*{mon}"


def frame_monomial(a, L, coeff=ONE) -> TorusElement:
    frame = _freeze(L)
    return TorusElement(frame, {tuple(a): coeff})


def unit_vector(m, i, scale=1):
    v = [0] * m
    v[i] = scale
    return tuple(v)


def torus_mul(u: TorusElement, v: TorusElement) -> TorusElement:
    u._check(v)
    L = u.frame
    out = {}
    for a, ca in u._terms.items():
        # row vector a^T L, reused across v's terms
        aL = [0] * len(a)
        for i, ai in enumerate(a):
            if ai:
                row = L[i]
                for j in range(len(a)):
                    aL[j] += ai * row[j]
        for b, cb in v._terms.items():
            h = sum(x * y for x, y in zip(aL, b))
            s = tuple(x + y for x, y in zip(a, b))
            term = (ca * cb).shift(h)
            prev = out.get(s)
            term = term if prev is None else prev + term
            if term:
                out[s] = term
            else:
                out.pop(s, None)
    return TorusElement._raw(u.frame, out)


def torus_divide_exact(num: TorusElement, den: TorusElement) -> TorusElement:
    """Return w with den * w == num (left division), else raise DivisionError.

    Leading-term elimination in deglex order. Newton polytopes add under
    multiplication, so every quotient exponent lies in the coordinate box
    [min(num) - min(den), max(num) - max(den)]; leaving it means the
    division is not exact, which also guarantees termination.
    """
    num._check(den)
    if not den:
        raise ZeroDivisionError("division by zero torus element")
    L = num.frame
    if not num:
        return TorusElement._raw(L, {})
    lead_b, lead_c = den.leading()
    m = len(L)
    lo = [min(a[i] for a in num._terms) - min(b[i] for b in den._terms) for i in range(m)]
    hi = [max(a[i] for a in num._terms) - max(b[i] for b in den._terms) for i in range(m)]
    rem = num
    quot = {}
    while rem:
        a, c = rem.leading()
        shift = tuple(x - y for x, y in zip(a, lead_b))
        if any(s < l or s > h for s, l, h in zip(shift, lo, hi)):
            break
        # M(b) M(s) = q^(b^T L s / 2) M(a)
        h = bilinear(lead_b, L, shift)
        try:
            coeff = c.divide_exact(lead_c).shift(-h)
        except ArithmeticError:
            break
        quot[shift] = coeff
        rem = rem - torus_mul(den, TorusElement._raw(L, {shift: coeff}))
    if rem:
        raise DivisionError(f"{den!r} does not divide {num!r}")
    return TorusElement._raw(L, quot)


def classical_limit(u: TorusElement) -> dict:
    """Commutative Laurent polynomial {exponent: int} obtained at q^(1/2)=1."""
    out = {}
    for a, c in u._terms.items():
        v = c.eval_at_one()
        if v:
            out[a] = v
    return out


def exchange_vectors(B, mutable_rows, k):
    """The two exponent vectors of the quantum exchange relation in direction k."""
    m = len(B)
    r = mutable_rows[k]
    pos = [0] * m
    neg = [0] * m
    for i in range(m):
        b = B[i][k]
        if i == r:
            continue
        if b > 0:
            pos[i] = b
        elif b < 0:
            neg[i] = -b
    v1 = list(pos)
    v2 = list(neg)
    v1[r] = -1
    v2[r] = -1
    return tuple(v1), tuple(v2), tuple(pos), tuple(neg)


def exchange_variable(seed, k) -> TorusElement:
    """X_k' = M(v1) + M(v2) over the seed's own frame."""
    v1, v2, _, _ = exchange_vectors(seed.B, seed.mutable_rows, k)
    frame = _freeze(seed.L)
    return TorusElement(frame, {v1: ONE}) + TorusElement(frame, {v2: ONE})


def exchange_relation(seed, k):
    """Right-hand side of X_k X_k' as ordered monomials in the current cluster.

    Returns a list of (QScalar coefficient, exponent vector c) so that
    X_k X_k' = sum coeff * X_1^c_1 ... X_m^c_m.
    """
    _, _, pos, neg = exchange_vectors(seed.B, seed.mutable_rows, k)
    r = seed.mutable_rows[k]
    L = seed.L
    out = []
    for c in (pos, neg):
        h = sum(L[r][i] * ci for i, ci in enumerate(c)) + ordered_prefactor(c, L)
        out.append((qpow(h), c))
    return out


def ordered_product(factors, exponents, frame) -> TorusElement:
    """Y_1^c_1 ... Y_m^c_m for torus elements Y_i (nonnegative c)."""
    result = TorusElement._raw(frame, {(0,) * len(frame): ONE})
    for y, e in zip(factors, exponents):
        if e < 0:
            raise ValueError("ordered_product needs nonnegative exponents")
        for _ in range(e):
            result = torus_mul(result, y)
    return result


def mutated_expansion(seed, k) -> TorusElement:
    """The new cluster variable in direction k, written in the initial frame.

    Uses X_k X_k' = sum of ordered products of current variables and divides
    exactly by the current expansion of X_k.
    """
    if seed.expansions is None:
        raise ValueError("seed does not track expansions")
    Y = seed.expansions
    r = seed.mutable_rows[k]
    frame = Y[r].frame
    num = TorusElement._raw(frame, {})
    for coeff, c in exchange_relation(seed, k):
        num = num + ordered_product(Y, c, frame).scale(coeff)
    return torus_divide_exact(num, Y[r])


def quasi_commute_exponent(u: TorusElement, v: TorusElement):
    """Half-exponent h with u v = q^(h/2) v u, or None if no such h exists."""
    uv = torus_mul(u, v)
    vu = torus_mul(v, u)
    if not uv or not vu:
        return None
    a, c = uv.leading()
    c2 = vu._terms.get(a)
    if c2 is None:
        return None
    h = c.max_exponent() - c2.max_exponent()
    return h if uv == vu.scale(qpow(h)) else None
