"""Small recursive-descent parser shared by QScalar and NCPolynomial text forms.

Grammar (whitespace insensitive)::

    expr     := term (("+" | "-") term)*
    term     := unary ("*" unary)*
    unary    := ("-" | "+") unary | power
    power    := atom ("^" exponent)?
    atom     := INT | "q" | NAME | "(" expr ")" | bracket
    bracket  := "[" expr "," expr "]" ("_" subscript)?
    exponent := INT | "-" INT | "(" "-"? INT ("/" INT)? ")" | "{" ... "}"

``[a,b]_s`` denotes a*b - s*b*a; without a subscript it is the ordinary
commutator.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .qscalar import ONE, QScalar, QScalarError, qpow_fraction

_TOKEN = re.compile(r"\s*(?:(\d+)|([^\W\d_][^\W_]*'*)|(\S))", re.UNICODE)


class ParseError(ValueError):
    pass


def _tokenize(text):
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected input at column {pos + 1}: {text[pos:]!r}")
        num, name, sym = m.groups()
        if num is not None:
            tokens.append(("int", int(num), m.start(1)))
        elif name is not None:
            tokens.append(("name", name, m.start(2)))
        else:
            tokens.append(("sym", sym, m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, symbols, scalar_only):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.symbols = symbols
        self.scalar_only = scalar_only

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, sym):
        kind, val, pos = self.take()
        if kind != "sym" or val != sym:
            raise ParseError(f"expected {sym!r} at column {pos + 1} in {self.text!r}")

    def at(self, sym):
        kind, val, _ = self.peek()
        return kind == "sym" and val == sym

    def parse(self):
        value = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise ParseError(f"unexpected {val!r} at column {pos + 1} in {self.text!r}")
        return value

    def expr(self):
        value = self.term()
        while self.at("+") or self.at("-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.unary()
        while self.at("*"):
            self.take()
            value = value * self.unary()
        return value

    def unary(self):
        if self.at("-"):
            self.take()
            return -self.unary()
        if self.at("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base, is_q = self.atom()
        if not self.at("^"):
            return base
        self.take()
        exp = self.exponent()
        if is_q:
            try:
                return qpow_fraction(exp)
            except QScalarError as exc:
                raise ParseError(str(exc)) from None
        if exp.denominator != 1 or exp < 0:
            raise ParseError(f"non-integral or negative power {exp} of a non-scalar")
        result = base
        for _ in range(int(exp) - 1):
            result = result * base
        if exp == 0:
            return ONE
        return result

    def exponent(self):
        sign = 1
        if self.at("-"):
            self.take()
            sign = -1
        if self.at("(") or self.at("{"):
            close = ")" if self.take()[1] == "(" else "}"
            if self.at("-"):
                self.take()
                sign = -sign
            kind, num, pos = self.take()
            if kind != "int":
                raise ParseError(f"expected integer exponent at column {pos + 1}")
            den = 1
            if self.at("/"):
                self.take()
                kind, den, pos = self.take()
                if kind != "int":
                    raise ParseError(f"expected integer denominator at column {pos + 1}")
            self.expect(close)
            return sign * Fraction(num, den)
        kind, num, pos = self.take()
        if kind != "int":
            raise ParseError(f"expected exponent at column {pos + 1} in {self.text!r}")
        return Fraction(sign * num)

    def atom(self):
        kind, val, pos = self.take()
        if kind == "int":
            return QScalar.coerce(val), False
        if kind == "name":
            if val == "q":
                return qpow_fraction(1), True
            if val not in self.symbols:
                raise ParseError(f"unknown symbol {val!r} at column {pos + 1} in {self.text!r}")
            return self.symbols[val], False
        if kind == "sym" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner, False
        if kind == "sym" and val == "[":
            a = self.expr()
            self.expect(",")
            b = self.expr()
            self.expect("]")
            s = QScalar.coerce(1)
            if self.at("_"):
                self.take()
                s = self.subscript()
            return a * b - (b * a) * s, False
        raise ParseError(f"unexpected {val!r} at column {pos + 1} in {self.text!r}")

    def subscript(self):
        if self.at("{"):
            self.take()
            value = self.expr()
            self.expect("}")
        else:
            value = self.power()
        if not isinstance(value, QScalar):
            raise ParseError("q-commutator subscript must be a scalar")
        return value


def parse_expression(text, symbols, scalar_only=False):
    """Parse ``text``; ``symbols`` maps names to ring elements.

    Ring elements must support +, -, unary -, and * with each other and
    with QScalar on either side.
    """
    return _Parser(text, symbols, scalar_only).parse()
