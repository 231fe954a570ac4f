"""Parsing of command-line class literals.

Grammar (whitespace ignored):

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := atom ['^' INT]
    atom   := NUMBER ['/' NUMBER] | NAME | '(' expr ')'

NAME is a base-algebra basis name or a divisor variable x1, x2, ...
(1-based).  Examples: "x1^2*x3 + (2/3)*t*x2", "x1+x2+x3".  A bare
juxtaposition like "(2/3)t" is accepted as multiplication.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .basealg import Element
from .errors import DegreeMismatchError, MalformedInputError
from .srbundle import (BundleElement, BundleRing, bel_add, bel_mul, bel_scale,
                       lift, one, x_class)

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z][A-Za-z0-9]*)|(?P<op>[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise MalformedInputError(f"bad character in literal: {text[pos:]!r}")
            break
        pos = m.end()
        for kind in ("num", "name", "op"):
            val = m.group(kind)
            if val is not None:
                out.append((kind, val))
                break
    return out


class _Parser:
    def __init__(self, ring: BundleRing, tokens: list[tuple[str, str]]):
        self.ring = ring
        self.tokens = tokens
        self.pos = 0

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect_op(self, op: str):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise MalformedInputError(f"expected {op!r} in literal")

    def parse(self) -> BundleElement:
        el = self.expr()
        if self.pos != len(self.tokens):
            raise MalformedInputError("trailing junk in literal")
        return el

    def expr(self) -> BundleElement:
        kind, val = self.peek()
        negate = False
        if kind == "op" and val == "-":
            self.take()
            negate = True
        acc = self.term()
        if negate:
            acc = bel_scale(acc, -1)
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                nxt = self.term()
                if val == "-":
                    nxt = bel_scale(nxt, -1)
                acc = bel_add(acc, nxt)
            else:
                return acc

    def term(self) -> BundleElement:
        acc = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = bel_mul(self.ring, acc, self.factor())
            elif kind in ("num", "name") or (kind == "op" and val == "("):
                # juxtaposition, e.g. "(2/3)t" or "2x1"
                acc = bel_mul(self.ring, acc, self.factor())
            else:
                return acc

    def factor(self) -> BundleElement:
        base = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val = self.take()
            if kind != "num":
                raise MalformedInputError("exponent must be a number")
            power = int(val)
            acc = one(self.ring)
            for _ in range(power):
                acc = bel_mul(self.ring, acc, base)
            return acc
        return base

    def atom(self) -> BundleElement:
        kind, val = self.take()
        if kind == "num":
            value = Fraction(int(val))
            nk, nv = self.peek()
            if nk == "op" and nv == "/":
                self.take()
                dk, dv = self.take()
                if dk != "num":
                    raise MalformedInputError("denominator must be a number")
                value /= int(dv)
            return bel_scale(one(self.ring), value)
        if kind == "name":
            m = re.fullmatch(r"x(\d+)", val)
            if m:
                idx = int(m.group(1)) - 1
                if not 0 <= idx < self.ring.cp.s:
                    raise MalformedInputError(f"no divisor variable {val!r}")
                return x_class(self.ring, idx)
            return lift(self.ring, self.ring.base.element(val))
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect_op(")")
            return inner
        raise MalformedInputError(f"unexpected token {val!r} in literal")


def parse_class(ring: BundleRing, text: str) -> BundleElement:
    """Parse a bundle-ring class literal."""
    tokens = _tokenize(text)
    if not tokens:
        raise MalformedInputError("empty class literal")
    return _Parser(ring, tokens).parse()


def parse_gamma(ring: BundleRing, text: str) -> Element:
    """Parse a base-algebra class literal (no divisor variables allowed)."""
    el = parse_class(ring, text)
    out: Element = {}
    for expo, coeff in el.items():
        if any(expo):
            raise DegreeMismatchError("base class literal contains divisor variables")
        for idx, c in coeff.items():
            out[idx] = out.get(idx, Fraction(0)) + c
    return {k: v for k, v in out.items() if v}


def parse_h(text: str, s: int) -> list[Fraction]:
    """Parse a comma-separated support vector like '1,1/2,-3'."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != s:
        raise MalformedInputError(f"support vector needs {s} entries, got {len(parts)}")
    try:
        return [Fraction(p) for p in parts]
    except (ValueError, ZeroDivisionError) as exc:
        raise MalformedInputError(f"bad rational in support vector: {exc}") from exc
