"""Exact evaluation of small integer expressions such as ``2^8*3*5^3`` or ``2^2^16``.

Supports ``+ - * ^`` and parentheses over natural numbers; ``^`` is
right-associative and binds tighter than ``*``.
"""
from __future__ import annotations

import math
import re
from typing import List

__all__ = ["evaluate", "ExpressionError", "MAX_RESULT_BITS"]

MAX_RESULT_BITS = 1 << 26

_TOKEN = re.compile(r"\s*(?:(\d+)|(.))")


class ExpressionError(ValueError):
    pass


def _tokenize(text: str) -> List[str]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        num, op = m.groups()
        if num is not None:
            tokens.append(num)
        elif op.strip():
            if op not in "+-*^()":
                raise ExpressionError(f"unexpected character {op!r} in {text!r}")
            tokens.append(op)
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: List[str]):
        self.tokens = tokens
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ExpressionError("unexpected end of expression")
        self.i += 1
        return tok

    def expr(self) -> int:
        value = self.term()
        while self.peek() in ("+", "-"):
            op = self.take()
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> int:
        value = self.power()
        while self.peek() == "*":
            self.take()
            value *= self.power()
        return value

    def power(self) -> int:
        base = self.atom()
        if self.peek() != "^":
            return base
        self.take()
        exp = self.power()
        if exp < 0:
            raise ExpressionError("negative exponent")
        if base > 1 and exp * math.log2(base) > MAX_RESULT_BITS:
            raise ExpressionError(f"{base}^{exp} is too large to materialize")
        return base**exp

    def atom(self) -> int:
        tok = self.take()
        if tok == "(":
            value = self.expr()
            if self.take() != ")":
                raise ExpressionError("missing ')'")
            return value
        if tok.isdigit():
            return int(tok)
        raise ExpressionError(f"unexpected token {tok!r}")


def evaluate(text: str) -> int:
    """Evaluate ``text`` to a nonnegative integer."""
    tokens = _tokenize(text)
    if not tokens:
        raise ExpressionError("empty expression")
    parser = _Parser(tokens)
    value = parser.expr()
    if parser.peek() is not None:
        raise ExpressionError(f"trailing input at {parser.peek()!r}")
    if value < 0:
        raise ExpressionError("expression is negative")
    return value
