"""Recursive-descent parser for rational expressions over a declared variable list.

Grammar::

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := ('-'|'+') factor | base ('^' integer)?
    base   := integer | identifier | '(' expr ')'

Errors carry a character offset.  When input ends early the offset points at the
last token read, so ``"1/(1+x+"`` fails at the dangling ``+`` (offset 6).
"""
from __future__ import annotations

import re
from typing import NamedTuple, Sequence

from .errors import ParseError, UnknownIdentifier
from .multipoly import MultiPoly, RationalFunction

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


class Token(NamedTuple):
    kind: str  # "int", "ident", "op", "end"
    text: str
    offset: int


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos = 0
    text = text.replace("−", "-")
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        if m.group(1) is not None:
            tokens.append(Token("int", m.group(1), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(Token("ident", m.group(2), m.start(2)))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", m.start(3))
            tokens.append(Token("op", ch, m.start(3)))
        pos = m.end()
    last = tokens[-1].offset if tokens else 0
    tokens.append(Token("end", "", last))
    return tokens


class _Parser:
    def __init__(self, text: str, vars: Sequence[str]):
        self.vars = tuple(vars)
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self) -> Token:
        return self.tokens[self.i]

    def take(self) -> Token:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def fail(self, what: str):
        tok = self.peek()
        if tok.kind == "end":
            raise ParseError(f"unexpected end of input, expected {what}", tok.offset)
        raise ParseError(f"unexpected {tok.text!r}, expected {what}", tok.offset)

    def parse(self) -> RationalFunction:
        if self.peek().kind == "end":
            raise ParseError("empty expression", 0)
        value = self.expr()
        if self.peek().kind != "end":
            self.fail("operator or end of input")
        return value

    def expr(self) -> RationalFunction:
        value = self.term()
        while self.peek().text in ("+", "-") and self.peek().kind == "op":
            op = self.take().text
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RationalFunction:
        value = self.factor()
        while self.peek().text in ("*", "/") and self.peek().kind == "op":
            tok = self.take()
            rhs = self.factor()
            if tok.text == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError("division by zero", tok.offset)
                value = value / rhs
        return value

    def factor(self) -> RationalFunction:
        tok = self.peek()
        if tok.kind == "op" and tok.text in ("-", "+"):
            self.take()
            inner = self.factor()
            return -inner if tok.text == "-" else inner
        value = self.base()
        if self.peek().kind == "op" and self.peek().text == "^":
            self.take()
            exp = self.peek()
            if exp.kind != "int":
                self.fail("nonnegative integer exponent")
            self.take()
            value = value ** int(exp.text)
        return value

    def base(self) -> RationalFunction:
        tok = self.peek()
        if tok.kind == "int":
            self.take()
            return RationalFunction.const(int(tok.text), self.vars)
        if tok.kind == "ident":
            self.take()
            if tok.text not in self.vars:
                raise UnknownIdentifier(f"unknown identifier {tok.text!r}", tok.offset)
            return RationalFunction.gen(tok.text, self.vars)
        if tok.kind == "op" and tok.text == "(":
            self.take()
            value = self.expr()
            if not (self.peek().kind == "op" and self.peek().text == ")"):
                self.fail("')'")
            self.take()
            return value
        self.fail("number, identifier or '('")


def parse_expression(text: str, vars: Sequence[str]) -> RationalFunction:
    """Parse ``text`` into an exact RationalFunction over ``vars``."""
    return _Parser(text, vars).parse()


def parse_polynomial(text: str, vars: Sequence[str]) -> MultiPoly:
    """Parse an expression that must reduce to a polynomial."""
    r = parse_expression(text, vars)
    if not r.den.is_constant():
        raise ParseError("expression is not a polynomial", 0)
    return r.num * (1 / r.den.constant_term())
