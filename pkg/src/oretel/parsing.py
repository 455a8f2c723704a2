"""Text grammar for rational functions and operators.

Operators are written as sums of products, e.g.
``(a^3)*Da^4 + (4*a^2)*Da^3 + (4*a^3*x^4)``.  Products are evaluated left to
right with the algebra's commutation rules, so ``Dx*x`` parses to
``x*Dx + 1``.  Division is only allowed by coefficient expressions.
"""

import re

from .arith import RatFunc
from .errors import ParseError
from .ore import OreOperator

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip() == "":
                break
            bad = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[bad]!r}", text, bad)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            tokens.append(("num", m.group(1), start))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), start))
        else:
            op = m.group(3)
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ctx, var_index, algebra=None):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.ctx = ctx
        self.var_index = var_index
        self.algebra = algebra

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return ParseError(msg, self.text, tok[2])

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        val = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected {self.peek()[1]!r}")
        return val

    def expr(self):
        val = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            val = self.add(val, rhs) if op == "+" else self.add(val, self.neg(rhs))
        return val

    def term(self):
        val = self.unary()
        while self.peek()[:2] in (("op", "*"), ("op", "/")):
            tok = self.take()
            rhs = self.unary()
            if tok[1] == "*":
                val = self.mul(val, rhs)
            else:
                if isinstance(rhs, OreOperator):
                    raise self.error("division by an operator is not supported", tok)
                if rhs.is_zero():
                    raise self.error("division by zero", tok)
                val = self.mul(val, rhs.inverse())
        return val

    def unary(self):
        if self.peek()[:2] == ("op", "-"):
            self.take()
            return self.neg(self.unary())
        if self.peek()[:2] == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            tok = self.take()
            sign = 1
            paren = False
            if self.peek()[:2] == ("op", "("):
                self.take()
                paren = True
            if self.peek()[:2] == ("op", "-"):
                self.take()
                sign = -1
            num = self.take()
            if num[0] != "num":
                raise self.error("exponent must be an integer", num)
            if paren:
                if self.peek()[:2] != ("op", ")"):
                    raise self.error("expected ')'")
                self.take()
            e = sign * int(num[1])
            if isinstance(base, OreOperator):
                if e < 0:
                    raise self.error("negative power of an operator", tok)
                return base ** e
            if e < 0 and base.is_zero():
                raise self.error("zero to a negative power", tok)
            return base ** e
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return RatFunc(self.ctx.constant(int(val)))
        if kind == "name":
            if val in self.var_index:
                return RatFunc(self.ctx.gens()[self.var_index[val]])
            if self.algebra is not None and val in self.algebra.symbol_index:
                return self.algebra.gen(val)
            raise self.error(f"unknown symbol {val!r}", tok)
        if (kind, val) == ("op", "("):
            inner = self.expr()
            if self.peek()[:2] != ("op", ")"):
                raise self.error("expected ')'")
            self.take()
            return inner
        raise self.error(f"unexpected {val!r}" if val else "unexpected end of input", tok)

    # value arithmetic -------------------------------------------------------
    def add(self, a, b):
        if isinstance(a, OreOperator) or isinstance(b, OreOperator):
            return self.lift(a) + self.lift(b)
        return a + b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        if isinstance(a, OreOperator) or isinstance(b, OreOperator):
            if not isinstance(a, OreOperator):
                return b.scale(a)
            return a * self.lift(b)
        return a * b

    def lift(self, a):
        if isinstance(a, OreOperator):
            return a
        return OreOperator(self.algebra, {self.algebra.zero_exp: a})


def parse_operator(text, algebra):
    """Parse ``text`` into an :class:`OreOperator` of ``algebra``."""
    p = _Parser(text, algebra.ctx, algebra.var_index, algebra)
    val = p.parse()
    return p.lift(val)


def parse_ratfunc(text, ctx):
    """Parse a rational function in the variables of the flint context ``ctx``."""
    names = ctx.names()
    p = _Parser(text, ctx, {nm: k for k, nm in enumerate(names)})
    return p.parse()
