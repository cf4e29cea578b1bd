"""Parser for small bivariate polynomial expressions in x and T.

Grammar (y is accepted as a synonym for T)::

    expr   := term (("+" | "-") term)*
    term   := unary ("*" unary)*
    unary  := ("+" | "-") unary | power
    power  := atom ("^" INT)?
    atom   := INT | "x" | "T" | "y" | "(" expr ")"

Positions in error messages count characters from 1.
"""

from .errors import ParseError


def _add(a, b, sign=1):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0) + sign * v
        if not out[k]:
            del out[k]
    return out


def _mul(a, b):
    out = {}
    for (i1, j1), c1 in a.items():
        for (i2, j2), c2 in b.items():
            k = (i1 + i2, j1 + j2)
            out[k] = out.get(k, 0) + c1 * c2
    return {k: v for k, v in out.items() if v}


def _pow(a, e):
    out = {(0, 0): 1}
    for _ in range(e):
        out = _mul(out, a)
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, message, pos=None):
        raise ParseError(message, (self.pos if pos is None else pos) + 1)

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def integer(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            found = self.text[self.pos] if self.pos < len(self.text) else "end of input"
            self.error(f"expected an integer, found {found!r}")
        return int(self.text[start:self.pos])

    def parse(self):
        result = self.expr()
        if self.peek():
            self.error(f"unexpected {self.peek()!r}")
        return result

    def expr(self):
        acc = self.term()
        while self.peek() in ("+", "-"):
            op = self.text[self.pos]
            self.pos += 1
            acc = _add(acc, self.term(), 1 if op == "+" else -1)
        return acc

    def term(self):
        acc = self.unary()
        while self.peek() == "*":
            self.pos += 1
            acc = _mul(acc, self.unary())
        return acc

    def unary(self):
        c = self.peek()
        if c in ("+", "-"):
            self.pos += 1
            inner = self.unary()
            return inner if c == "+" else {k: -v for k, v in inner.items()}
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == "^":
            self.pos += 1
            base = _pow(base, self.integer())
        return base

    def atom(self):
        c = self.peek()
        if not c:
            self.error("unexpected end of input")
        if c.isdigit():
            n = self.integer()
            return {(0, 0): n} if n else {}
        if c == "(":
            self.pos += 1
            inner = self.expr()
            if self.peek() != ")":
                self.error("expected ')'")
            self.pos += 1
            return inner
        if c == "x":
            self.pos += 1
            return {(1, 0): 1}
        if c in ("T", "y"):
            self.pos += 1
            return {(0, 1): 1}
        if c.isalpha():
            self.error(f"unknown symbol {c!r}")
        self.error(f"unexpected {c!r}")


def parse_curve_expr(text, ctx=None):
    """Expand text into {(x_exp, T_exp): coefficient}.

    With a field context the integer coefficients are mapped into F_q and
    zero entries dropped; without one they stay integers.
    """
    table = _Parser(text).parse()
    if ctx is None:
        return table
    out = {}
    for k, v in table.items():
        c = ctx.from_int(v)
        if c:
            out[k] = c
    return out
