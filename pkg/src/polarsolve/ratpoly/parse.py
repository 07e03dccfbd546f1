"""Text grammar for polynomials.

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := ('+' | '-') factor | atom ('^' INT)?
    atom   := NUMBER ('/' NUMBER)? | 'X' INT | '(' expr ')'

Whitespace (including newlines) is insignificant.  Errors carry 1-based line
and column of the offending token.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .multipoly import MultiPoly

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<var>X(?P<idx>\d+))|(?P<op>[-+*^/()]))")


class PolyParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _position(text: str, offset: int) -> tuple[int, int]:
    line = text.count("\n", 0, offset) + 1
    col = offset - (text.rfind("\n", 0, offset) + 1) + 1
    return line, col


def _tokenize(text: str):
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character {text[pos]!r}", *_position(text, pos))
        start = m.start(m.lastgroup if m.lastgroup != "idx" else "var")
        if m.group("num") is not None:
            tokens.append(("num", int(m.group("num")), start))
        elif m.group("var") is not None:
            tokens.append(("var", int(m.group("idx")), start))
        else:
            tokens.append((m.group("op"), None, start))
        pos = m.end()
    tokens.append(("eof", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.nvars = nvars

    def error(self, msg, tok=None):
        tok = tok or self.tokens[self.i]
        raise PolyParseError(msg, *_position(self.text, tok[2]))

    def peek(self):
        return self.tokens[self.i][0]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "eof" else repr(self.text[tok[2]:tok[2] + 1])
            self.error(f"expected {kind!r}, found {what}")
        self.i += 1
        return tok

    def parse(self) -> MultiPoly:
        result = self.expr()
        if self.peek() != "eof":
            self.error("unexpected trailing input")
        return result

    def expr(self):
        acc = self.term()
        while self.peek() in "+-":
            op = self.take()[0]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self):
        if self.peek() in ("+", "-"):
            op = self.take()[0]
            inner = self.factor()
            return inner if op == "+" else -inner
        base = self.atom()
        if self.peek() == "^":
            self.take()
            tok = self.take("num")
            base = base ** tok[1]
        return base

    def atom(self):
        tok = self.tokens[self.i]
        kind = tok[0]
        if kind == "num":
            self.take()
            value = Fraction(tok[1])
            if self.peek() == "/":
                self.take()
                den = self.take("num")
                if den[1] == 0:
                    self.error("zero denominator", den)
                value /= den[1]
            return MultiPoly.constant(self.nvars, value)
        if kind == "var":
            self.take()
            if not 1 <= tok[1] <= self.nvars:
                self.error(f"variable X{tok[1]} outside X1..X{self.nvars}", tok)
            return MultiPoly.variable(self.nvars, tok[1])
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        self.error("expected a number, variable or '('")


def max_variable_index(text: str) -> int:
    return max((int(m) for m in re.findall(r"X(\d+)", text)), default=0)


def parse_poly(text: str, nvars: int | None = None) -> MultiPoly:
    """Parse ``text`` into a polynomial in ``nvars`` variables.

    >>> str(parse_poly("3/2*X1^2*X3 - X2 + 1", 3))
    '3/2*X1^2*X3 - X2 + 1'
    """
    if nvars is None:
        nvars = max_variable_index(text)
    return _Parser(text, nvars).parse()
