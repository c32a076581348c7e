"""Laurent polynomials in q^(1/2) with integer coefficients.

Exponents are stored as integer counts of q^(1/2) units, so ``q`` itself is
the monomial with half-exponent 2.
"""
from __future__ import annotations

from fractions import Fraction


class QScalarError(ArithmeticError, ValueError):
    pass


class QScalar:
    """Immutable element of Z[q^(1/2), q^(-1/2)].

    ``terms`` maps a half-exponent h (the monomial q^(h/2)) to a nonzero
    integer coefficient.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        if terms is None:
            self._terms = {}
        elif isinstance(terms, dict):
            self._terms = {int(h): int(c) for h, c in terms.items() if c}
        else:
            # iterable of (h, c) pairs, possibly repeated
            acc = {}
            for h, c in terms:
                acc[h] = acc.get(h, 0) + c
            self._terms = {h: c for h, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms):
        obj = cls.__new__(cls)
        obj._terms = terms
        obj._hash = None
        return obj

    @classmethod
    def coerce(cls, value) -> "QScalar":
        if isinstance(value, QScalar):
            return value
        if isinstance(value, int):
            return cls._raw({0: value} if value else {})
        raise TypeError(f"cannot coerce {type(value).__name__} to QScalar")

    # -- structure -----------------------------------------------------

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return sorted(self._terms.items())

    def key(self):
        return tuple(sorted(self._terms.items()))

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, int):
            other = QScalar.coerce(other)
        if not isinstance(other, QScalar):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def is_zero(self):
        return not self._terms

    def is_unit(self):
        """True for +-q^(h/2), the invertible elements of the ring."""
        if len(self._terms) != 1:
            return False
        (c,) = self._terms.values()
        return c in (1, -1)

    def min_exponent(self):
        return min(self._terms) if self._terms else None

    def max_exponent(self):
        return max(self._terms) if self._terms else None

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = QScalar.coerce(other)
        elif not isinstance(other, QScalar):
            return NotImplemented
        out = dict(self._terms)
        for h, c in other._terms.items():
            s = out.get(h, 0) + c
            if s:
                out[h] = s
            else:
                out.pop(h, None)
        return QScalar._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return QScalar._raw({h: -c for h, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = QScalar.coerce(other)
        elif not isinstance(other, QScalar):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return QScalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return ZERO
            return QScalar._raw({h: c * other for h, c in self._terms.items()})
        if not isinstance(other, QScalar):
            return NotImplemented
        a, b = self._terms, other._terms
        if len(b) == 1:
            ((hb, cb),) = b.items()
            return QScalar._raw({h + hb: c * cb for h, c in a.items()})
        if len(a) == 1:
            ((ha, ca),) = a.items()
            return QScalar._raw({h + ha: c * ca for h, c in b.items()})
        out = {}
        for ha, ca in a.items():
            for hb, cb in b.items():
                h = ha + hb
                out[h] = out.get(h, 0) + ca * cb
        return QScalar._raw({h: c for h, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, h: int) -> "QScalar":
        """Multiply by q^(h/2)."""
        return QScalar._raw({e + h: c for e, c in self._terms.items()})

    def inverse(self) -> "QScalar":
        if not self.is_unit():
            raise QScalarError(f"{self} is not a unit in Z[q^(+-1/2)]")
        ((h, c),) = self._terms.items()
        return QScalar._raw({-h: c})

    def divide_exact(self, other) -> "QScalar":
        """Return w with other * w == self, or raise QScalarError."""
        other = QScalar.coerce(other)
        if not other:
            raise ZeroDivisionError("division by zero QScalar")
        if other.is_unit():
            ((h, c),) = other._terms.items()
            return QScalar._raw({e - h: v * c for e, v in self._terms.items()})
        # long division from the top degree down
        rem = dict(self._terms)
        top_d = other.max_exponent()
        lead_d = other._terms[top_d]
        low_bound = (self.min_exponent() or 0) - other.min_exponent()
        quot = {}
        while rem:
            top = max(rem)
            shift = top - top_d
            if shift < low_bound:
                break
            coef, r = divmod(rem[top], lead_d)
            if r:
                break
            quot[shift] = coef
            for e, v in other._terms.items():
                k = e + shift
                s = rem.get(k, 0) - coef * v
                if s:
                    rem[k] = s
                else:
                    rem.pop(k, None)
        if rem:
            raise QScalarError(f"{other} does not divide {self}")
        return QScalar._raw(quot)

    def eval_at_one(self) -> int:
        return sum(self._terms.values())

    def bar(self) -> "QScalar":
        """The ring involution q^(1/2) -> q^(-1/2)."""
        return QScalar._raw({-h: c for h, c in self._terms.items()})

    # -- text ----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for h, c in sorted(self._terms.items(), reverse=True):
            mon = _format_power(h)
            if mon == "1":
                body = str(abs(c))
            elif abs(c) == 1:
                body = mon
            else:
                body = f"{abs(c)}*{mon}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self):
        return f"QScalar({self})"

    @classmethod
    def parse(cls, text: str) -> "QScalar":
        from ._expr import parse_expression

        return parse_expression(text, symbols={}, scalar_only=True)


def _format_power(h: int) -> str:
    if h == 0:
        return "1"
    if h == 2:
        return "q"
    if h % 2 == 0:
        return f"q^{h // 2}"
    return f"q^({h}/2)"


def qpow(h: int) -> QScalar:
    """The monomial q^(h/2)."""
    return QScalar._raw({int(h): 1})


def qpow_fraction(e) -> QScalar:
    """q^e for an integer or half-integer exponent e."""
    e = Fraction(e)
    h = e * 2
    if h.denominator != 1:
        raise QScalarError(f"exponent {e} is not a multiple of 1/2")
    return qpow(int(h))


def scalar_arith(a, b, op: str) -> QScalar:
    a, b = QScalar.coerce(a), QScalar.coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def eval_at_one(a) -> int:
    return QScalar.coerce(a).eval_at_one()


ZERO = QScalar._raw({})
ONE = QScalar._raw({0: 1})
Q = qpow(2)
QINV = qpow(-2)
