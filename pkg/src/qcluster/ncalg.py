"""Presented noncommutative algebras over Z[q^(+-1/2)].

Words are tuples of generator indices and are ordered degree-lexicographically
using the generator order of the presentation. A :class:`RewriteSystem` is a
set of rules ``leading word -> lower terms`` made confluent on all words of
length at most its degree bound (diamond-lemma completion).
"""
from __future__ import annotations

import heapq
import logging
import sys

from ._expr import ParseError, parse_expression
from .qscalar import ONE, QScalar, QScalarError, qpow

log = logging.getLogger(__name__)


class DegreeBoundError(ValueError):
    pass


class CompletionError(RuntimeError):
    pass


def word_key(w):
    return (len(w), w)


class NCPolynomial:
    """Finite map from words to nonzero QScalar coefficients."""

    __slots__ = ("_terms", "names")

    def __init__(self, terms=None, names=None):
        self.names = names
        self._terms = {}
        for w, c in (terms or {}).items():
            c = QScalar.coerce(c)
            if c:
                self._terms[tuple(w)] = c

    @classmethod
    def _raw(cls, terms, names):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj.names = names
        return obj

    @classmethod
    def constant(cls, c, names=None):
        c = QScalar.coerce(c)
        return cls._raw({(): c} if c else {}, names)

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items(), key=lambda t: word_key(t[0]), reverse=True)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def degree(self):
        return max((len(w) for w in self._terms), default=-1)

    def is_homogeneous(self):
        return len({len(w) for w in self._terms}) <= 1

    def leading(self):
        w = max(self._terms, key=word_key)
        return w, self._terms[w]

    def __eq__(self, other):
        if isinstance(other, (int, QScalar)):
            other = NCPolynomial.constant(other)
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def _names(self, other):
        return self.names if self.names is not None else getattr(other, "names", None)

    def _lift(self, other):
        if isinstance(other, NCPolynomial):
            return other
        if isinstance(other, (int, QScalar)):
            return NCPolynomial.constant(other, self.names)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        out = dict(self._terms)
        for w, c in other._terms.items():
            prev = out.get(w)
            s = c if prev is None else prev + c
            if s:
                out[w] = s
            else:
                out.pop(w, None)
        return NCPolynomial._raw(out, self._names(other))

    __radd__ = __add__

    def __neg__(self):
        return NCPolynomial._raw({w: -c for w, c in self._terms.items()}, self.names)

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def scale(self, s):
        s = QScalar.coerce(s)
        if not s:
            return NCPolynomial._raw({}, self.names)
        return NCPolynomial._raw({w: c * s for w, c in self._terms.items()}, self.names)

    def __mul__(self, other):
        if isinstance(other, (int, QScalar)):
            return self.scale(other)
        if not isinstance(other, NCPolynomial):
            return NotImplemented
        out = {}
        for u, a in self._terms.items():
            for v, b in other._terms.items():
                w = u + v
                prev = out.get(w)
                s = a * b if prev is None else prev + a * b
                if s:
                    out[w] = s
                else:
                    out.pop(w, None)
        return NCPolynomial._raw(out, self._names(other))

    def __rmul__(self, other):
        if isinstance(other, (int, QScalar)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n):
        result = NCPolynomial.constant(ONE, self.names)
        for _ in range(n):
            result = result * self
        return result

    def format(self, names=None):
        names = names or self.names
        if not self._terms:
            return "0"
        out = ""
        for w, c in self.items():
            mon = "*".join(names[i] if names else f"g{i}" for i in w) or "1"
            if mon == "1":
                piece = str(c)
            elif c == 1:
                piece = mon
            elif c == -1:
                piece = "-" + mon
            elif len(c.items()) == 1:
                piece = f"{c}*{mon}"
            else:
                piece = f"({c})*{mon}"
            if not out:
                out = piece
            elif piece.startswith("-"):
                out += " - " + piece[1:]
            else:
                out += " + " + piece
        return out

    __str__ = format

    def __repr__(self):
        return f"NCPolynomial({self.format()})"


def q_commutator(a: NCPolynomial, b: NCPolynomial, s: int = 2) -> NCPolynomial:
    """a*b - q^(s/2)*b*a; s=2 is [a,b]_q, s=0 the ordinary commutator."""
    return a * b - (b * a).scale(qpow(s))


def quantum_minor(rows, i, j, sign=+1) -> NCPolynomial:
    """m_{1i} m_{2j} - q^(+-1) m_{1j} m_{2i} for a two-row matrix (0-based columns)."""
    if not i < j:
        raise ValueError("quantum_minor needs column i < j")
    top, bottom = rows
    scalar = qpow(2 if sign > 0 else -2)
    return _as_poly(top[i]) * _as_poly(bottom[j]) - (_as_poly(top[j]) * _as_poly(bottom[i])).scale(
        scalar
    )


def _as_poly(x):
    if isinstance(x, NCPolynomial):
        return x
    return NCPolynomial.constant(x)


class Presentation:
    """Ordered generators plus relations (each an NCPolynomial equal to zero)."""

    def __init__(self, names, relations=(), degree_bound=8, notes=(), name=None):
        self.names = tuple(names)
        if len(set(self.names)) != len(self.names):
            raise ValueError("generator names must be distinct")
        if "q" in self.names:
            raise ValueError("'q' is reserved for the deformation parameter")
        self.index = {n: i for i, n in enumerate(self.names)}
        self.relations = []
        self.adjoined = []  # indices of relations not in the source presentation
        self.degree_bound = degree_bound
        self.notes = list(notes)
        self.name = name
        self._rewrite = None
        for r in relations:
            self.add_relation(r)

    def gen(self, name) -> NCPolynomial:
        return NCPolynomial._raw({(self.index[name],): ONE}, self.names)

    def gens(self):
        return {n: self.gen(n) for n in self.names}

    def one(self):
        return NCPolynomial.constant(ONE, self.names)

    def element(self, text) -> NCPolynomial:
        value = parse_expression(text, self.gens())
        if isinstance(value, QScalar):
            value = NCPolynomial.constant(value, self.names)
        value.names = self.names
        return value

    def add_relation(self, rel, note=None, adjoined=False):
        if isinstance(rel, str):
            rel = self.element(rel)
        rel.names = self.names
        if rel:
            _, lc = rel.leading()
            if not lc.is_unit():
                raise CompletionError(
                    f"relation {rel} has non-unit leading coefficient {lc}"
                )
        if adjoined:
            self.adjoined.append(len(self.relations))
        self.relations.append(rel)
        if note:
            self.notes.append(note)
        self._rewrite = None
        return rel

    def rewrite_system(self, degree_bound=None, max_rules=50000):
        """Completed rewrite system, cached per degree bound."""
        D = degree_bound or self.degree_bound
        if self._rewrite is None or self._rewrite.degree_bound < D:
            self._rewrite = complete(self, D, max_rules=max_rules)
        return self._rewrite

    def normal_form(self, x, degree_bound=None):
        return normal_form(x, self.rewrite_system(degree_bound))

    def __repr__(self):
        return f"Presentation({self.name or ''} gens={list(self.names)}, relations={len(self.relations)})"

    # -- text format ---------------------------------------------------

    @classmethod
    def from_text(cls, text, name=None):
        """Parse the declarative format::

            generators: a b c d
            degree_bound: 8
            relation: [a,b]_q
            adjoined: [a,d] - (q-q^-1)*b*c     # flagged in reports
        """
        names = None
        bound = 8
        pending = []
        for lineno, raw in enumerate(text.splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if ":" not in line:
                raise ParseError(f"line {lineno}: expected 'key: value', got {raw!r}")
            key, value = (s.strip() for s in line.split(":", 1))
            if key == "generators":
                names = value.replace(",", " ").split()
            elif key == "degree_bound":
                bound = int(value)
            elif key in ("relation", "adjoined"):
                pending.append((lineno, key, value))
            elif key == "name":
                name = value
            else:
                raise ParseError(f"line {lineno}: unknown key {key!r}")
        if names is None:
            raise ParseError("missing 'generators:' line")
        pres = cls(names, degree_bound=bound, name=name)
        for lineno, key, value in pending:
            try:
                note = f"adjoined relation {value} = 0" if key == "adjoined" else None
                pres.add_relation(value, note=note, adjoined=key == "adjoined")
            except (ParseError, QScalarError) as exc:
                raise ParseError(f"line {lineno}: {exc}") from None
        return pres


class RewriteSystem:
    """Rules lhs -> rhs, valid (confluent) on words of length <= degree_bound."""

    def __init__(self, ngens, degree_bound, names=None):
        self.ngens = ngens
        self.degree_bound = degree_bound
        self.names = names
        self.rules = {}
        self.max_len = 0
        self._cache = {}

    def _clear(self):
        self._cache = {}
        self.max_len = max((len(w) for w in self.rules), default=0)

    def find(self, w):
        """First (position, length) at which a rule lhs occurs in w."""
        rules = self.rules
        n = len(w)
        for i in range(n):
            for ln in range(1, min(self.max_len, n - i) + 1):
                if w[i : i + ln] in rules:
                    return i, ln
        return None

    def reduce_word(self, w):
        cached = self._cache.get(w)
        if cached is not None:
            return cached
        hit = self.find(w)
        if hit is None:
            result = {w: ONE}
        else:
            i, ln = hit
            prefix, suffix = w[:i], w[i + ln :]
            result = {}
            for u, c in self.rules[w[i : i + ln]].items():
                for v, d in self.reduce_word(prefix + u + suffix).items():
                    s = c * d
                    prev = result.get(v)
                    s = s if prev is None else prev + s
                    if s:
                        result[v] = s
                    else:
                        result.pop(v, None)
        self._cache[w] = result
        return result

    def reduce_terms(self, terms):
        out = {}
        for w, c in terms.items():
            if len(w) > self.degree_bound:
                raise DegreeBoundError(
                    f"word of length {len(w)} exceeds degree bound {self.degree_bound}"
                )
            for v, d in self.reduce_word(w).items():
                s = c * d
                prev = out.get(v)
                s = s if prev is None else prev + s
                if s:
                    out[v] = s
                else:
                    out.pop(v, None)
        return out

    def normal_form(self, x: NCPolynomial) -> NCPolynomial:
        return NCPolynomial._raw(self.reduce_terms(x._terms), x.names or self.names)

    def is_normal(self, w):
        return self.find(w) is None

    def normal_words(self, degree):
        """All normal words of the given length (no rule lhs as a subword)."""
        words = [()]
        for _ in range(degree):
            nxt = []
            for w in words:
                for g in range(self.ngens):
                    v = w + (g,)
                    if not any(v[len(v) - ln :] in self.rules for ln in range(1, min(self.max_len, len(v)) + 1)):
                        nxt.append(v)
            words = nxt
        return words

    def hilbert_counts(self, up_to):
        return [len(self.normal_words(d)) for d in range(up_to + 1)]

    def __len__(self):
        return len(self.rules)


def _make_rule(terms):
    """Normalize a nonzero polynomial into (lhs, rhs) with lhs coefficient 1."""
    lead = max(terms, key=word_key)
    lc = terms[lead]
    if not lc.is_unit():
        try:
            terms = {w: c.divide_exact(lc) for w, c in terms.items()}
        except QScalarError:
            raise CompletionError(
                f"non-unit leading coefficient {lc} on word {lead} during completion"
            ) from None
        lc = ONE
    inv = lc.inverse()
    rhs = {w: -(c * inv) for w, c in terms.items() if w != lead}
    return lead, rhs


def _contains(big, small):
    n, k = len(big), len(small)
    return any(big[i : i + k] == small for i in range(n - k + 1))


def complete(presentation: Presentation, degree_bound=None, max_rules=50000) -> RewriteSystem:
    """Degree-bounded completion of the presentation's relations."""
    D = degree_bound or presentation.degree_bound
    for rel in presentation.relations:
        if rel.degree() > D:
            raise CompletionError(f"degree bound {D} is below relation degree {rel.degree()}")
    rs = RewriteSystem(len(presentation.names), D, presentation.names)
    pairs = []
    counter = 0
    pending = [dict(r._terms) for r in presentation.relations]

    def add_pairs(lhs):
        nonlocal counter
        for other in list(rs.rules):
            for a, b in ((lhs, other), (other, lhs)) if other != lhs else ((lhs, lhs),):
                for ov in range(1, min(len(a), len(b))):
                    if a[-ov:] == b[:ov]:
                        length = len(a) + len(b) - ov
                        if length <= D:
                            counter += 1
                            heapq.heappush(pairs, (length, counter, a, b, ov))

    def insert(terms):
        red = rs.reduce_terms(terms)
        if not red:
            return
        lhs, rhs = _make_rule(red)
        displaced = [w for w in rs.rules if _contains(w, lhs)]
        for w in displaced:
            old = rs.rules.pop(w)
            poly = {k: -v for k, v in old.items()}
            poly[w] = ONE
            pending.append(poly)
        rs.rules[lhs] = rhs
        rs._clear()
        if len(rs.rules) > max_rules:
            raise CompletionError(f"completion exceeded the budget of {max_rules} rules")
        add_pairs(lhs)

    while pending or pairs:
        while pending:
            insert(pending.pop())
        if not pairs:
            break
        _, _, a, b, ov = heapq.heappop(pairs)
        if a not in rs.rules or b not in rs.rules:
            continue
        left = {u + b[ov:]: c for u, c in rs.rules[a].items()}
        right = {a[:-ov] + u: c for u, c in rs.rules[b].items()}
        diff = rs.reduce_terms(left)
        for w, c in rs.reduce_terms(right).items():
            s = diff.get(w)
            s = -c if s is None else s - c
            if s:
                diff[w] = s
            else:
                diff.pop(w, None)
        if diff:
            insert(diff)
    log.debug("completed %s: %d rules up to degree %d", presentation.name, len(rs.rules), D)
    return rs


def normal_form(x: NCPolynomial, R: RewriteSystem) -> NCPolynomial:
    return R.normal_form(x)


def verify_identity(lhs: NCPolynomial, rhs: NCPolynomial, R: RewriteSystem):
    """(holds, residue): holds iff normal_form(lhs - rhs) vanishes."""
    residue = R.normal_form(lhs - rhs)
    return residue.is_zero(), residue


def hilbert_series_coefficients(pbw_degrees, up_to):
    """Coefficients of prod 1/(1 - t^d) over the given PBW generator degrees."""
    coeffs = [1] + [0] * up_to
    for d in pbw_degrees:
        for k in range(d, up_to + 1):
            coeffs[k] += coeffs[k - d]
    return coeffs


sys.setrecursionlimit(max(sys.getrecursionlimit(), 10000))
