"""Recursive-descent parser for the polynomial text grammar.

    expression := ['+'|'-'] term (('+'|'-') term)*
    term       := factor ('*' factor)*
    factor     := base ('^' nonneg-integer)?
    base       := identifier | rational | '(' expression ')'
    rational   := integer ('/' positive-integer)?

Whitespace is insignificant.  ``pi`` resolves through the context's pi mode.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .fields import FieldError
from .polynomial import ContextError, Polynomial, RingContext

__all__ = ["ParseError", "UnknownVariableError", "parse_polynomial"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} at position {pos}")
        self.pos = pos


class UnknownVariableError(ParseError):
    def __init__(self, name: str, pos: int):
        super().__init__(f"unknown variable {name!r}", pos)
        self.name = name


def _tokenize(src: str):
    tokens = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None:  # trailing whitespace
            break
        start = m.start(m.lastindex) if m.lastindex else m.end()
        if m.group(1) is not None:
            tokens.append(("int", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start)
            tokens.append((ch, ch, start))
        pos = m.end()
    tokens.append(("end", "", len(src)))
    return tokens


class _Parser:
    def __init__(self, src: str, ctx: RingContext):
        self.ctx = ctx
        self.tokens = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            want = "integer" if kind == "int" else repr(kind)
            found = "end of input" if tok[0] == "end" else repr(tok[1])
            raise ParseError(f"expected {want}, found {found}", tok[2])
        self.i += 1
        return tok

    def expression(self) -> Polynomial:
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> Polynomial:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> Polynomial:
        base = self.base()
        if self.peek()[0] == "^":
            self.take()
            exp = int(self.take("int")[1])
            base = base ** exp
        return base

    def base(self) -> Polynomial:
        kind, text, pos = self.peek()
        if kind == "name":
            self.take()
            if text == "pi":
                try:
                    return self.ctx.pi
                except ContextError:
                    raise UnknownVariableError(text, pos) from None
            if text not in self.ctx:
                raise UnknownVariableError(text, pos)
            return self.ctx.var(text)
        if kind == "int":
            self.take()
            value = Fraction(int(text))
            if self.peek()[0] == "/":
                self.take()
                dtok = self.take("int")
                den = int(dtok[1])
                if den == 0:
                    raise ParseError("denominator must be positive", dtok[2])
                value = Fraction(int(text), den)
            try:
                return self.ctx.const(value)
            except (FieldError, ZeroDivisionError) as exc:
                raise ParseError(f"coefficient {value} not representable in {self.ctx.field}: {exc}", pos) from None
        if kind == "(":
            self.take()
            inner = self.expression()
            self.take(")")
            return inner
        found = "end of input" if kind == "end" else repr(text)
        raise ParseError(f"unexpected {found}", pos)


def parse_polynomial(src: str, ctx: RingContext) -> Polynomial:
    parser = _Parser(src, ctx)
    result = parser.expression()
    tok = parser.peek()
    if tok[0] != "end":
        raise ParseError(f"unexpected {tok[1]!r}", tok[2])
    return result
