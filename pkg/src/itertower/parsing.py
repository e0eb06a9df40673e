"""Polynomial text input.

Two spellings are accepted::

    "-2,0,1"          coefficient list, constant term first
    "x^3 + 3/2*x"     expression over x

Expressions allow integer and rational literals, ``x``, ``^`` with a
nonnegative integer exponent, ``*``, ``/`` (by a constant), ``+``, ``-``,
parentheses and juxtaposition such as ``2x``.  Whitespace is ignored.
"""

from __future__ import annotations

from fractions import Fraction

from .algebra import Poly
from .errors import ParseError


def parse_rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise ParseError(text, 0, "not a rational number") from None


def parse_poly(text: str, var: str = "x") -> Poly:
    if "," in text:
        coeffs = []
        pos = 0
        for piece in text.split(","):
            if not piece.strip():
                raise ParseError(text, pos, "empty coefficient")
            try:
                coeffs.append(Fraction(piece.strip()))
            except (ValueError, ZeroDivisionError):
                raise ParseError(text, pos + len(piece) - len(piece.lstrip()),
                                 "bad coefficient") from None
            pos += len(piece) + 1
        return Poly(coeffs)
    return _Parser(text, var).parse()


class _Parser:
    # expr   := term (('+'|'-') term)*
    # term   := unary (('*'|'/')? unary)*
    # unary  := '-' unary | '+' unary | power
    # power  := atom ('^' integer)?
    # atom   := number | var | '(' expr ')'

    def __init__(self, text, var):
        self.text = text
        self.var = var
        self.pos = 0

    def error(self, msg):
        raise ParseError(self.text, self.pos, msg)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse(self) -> Poly:
        if not self.text.strip():
            self.error("empty polynomial")
        p = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return p

    def expr(self):
        p = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            q = self.term()
            p = p + q if op == "+" else p - q
        return p

    def term(self):
        p = self.unary()
        while True:
            c = self.peek()
            if c == "*":
                self.pos += 1
                p = p * self.unary()
            elif c == "/":
                self.pos += 1
                start = self.pos
                q = self.unary()
                if q.degree != 0:
                    self.pos = start
                    self.error("division by a non-constant")
                p = p * (1 / Fraction(q.lc))
            elif c and (c.isdigit() or c == "(" or self.text.startswith(self.var, self.pos)):
                p = p * self.unary()
            else:
                return p

    def unary(self):
        c = self.peek()
        if c == "-":
            self.pos += 1
            return -self.unary()
        if c == "+":
            self.pos += 1
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            self.skip()
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            if start == self.pos:
                self.error("expected a nonnegative integer exponent")
            base = base ** int(self.text[start:self.pos])
        return base

    def atom(self):
        c = self.peek()
        if c == "(":
            self.pos += 1
            p = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return p
        if c.isdigit():
            start = self.pos
            while self.pos < len(self.text) and self.text[self.pos].isdigit():
                self.pos += 1
            return Poly.const(int(self.text[start:self.pos]))
        if c and self.text.startswith(self.var, self.pos):
            self.pos += len(self.var)
            return Poly.x()
        self.error("expected a number, the variable, or '('" if c else "unexpected end of input")
