"""Rational functions over F_q in canonical form.

``num/den`` with den monic and gcd(num, den) = 1, so equal field elements
have identical representations and can be hashed.
"""

from . import poly as P


class RatFunc:
    __slots__ = ("ctx", "num", "den")

    def __init__(self, ctx, num, den=P.ONE, *, _canonical=False):
        self.ctx = ctx
        if _canonical:
            self.num, self.den = num, den
            return
        num, den = P.trim(tuple(num)), P.trim(tuple(den))
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            self.num, self.den = P.ZERO, P.ONE
            return
        g = P.pgcd(ctx, num, den)
        if g != P.ONE:
            num = P.pexact_div(ctx, num, g)
            den = P.pexact_div(ctx, den, g)
        lc = den[-1]
        if lc != 1:
            inv = ctx.inv(lc)
            num = P.pscale(ctx, num, inv)
            den = P.pscale(ctx, den, inv)
        self.num, self.den = num, den

    @classmethod
    def const(cls, ctx, c):
        return cls(ctx, P.const(c), P.ONE, _canonical=True)

    @classmethod
    def poly(cls, ctx, a):
        return cls(ctx, P.trim(tuple(a)), P.ONE, _canonical=True)

    @classmethod
    def zero(cls, ctx):
        return cls(ctx, P.ZERO, P.ONE, _canonical=True)

    @classmethod
    def one(cls, ctx):
        return cls(ctx, P.ONE, P.ONE, _canonical=True)

    def __bool__(self):
        return bool(self.num)

    def is_poly(self):
        return self.den == P.ONE

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            return other
        if isinstance(other, int):
            return RatFunc.const(self.ctx, self.ctx.from_int(other))
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        if not other.num:
            return self
        if not self.num:
            return other
        if self.den == other.den:
            return RatFunc(ctx, P.padd(ctx, self.num, other.num), self.den)
        num = P.padd(ctx, P.pmul(ctx, self.num, other.den), P.pmul(ctx, other.num, self.den))
        return RatFunc(ctx, num, P.pmul(ctx, self.den, other.den))

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(self.ctx, P.pneg(self.ctx, self.num), self.den, _canonical=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        ctx = self.ctx
        if not self.num or not other.num:
            return RatFunc.zero(ctx)
        # cross-cancel before multiplying keeps degrees small
        g1 = P.pgcd(ctx, self.num, other.den)
        g2 = P.pgcd(ctx, other.num, self.den)
        n1, d2 = self.num, other.den
        if g1 != P.ONE:
            n1, d2 = P.pexact_div(ctx, n1, g1), P.pexact_div(ctx, d2, g1)
        n2, d1 = other.num, self.den
        if g2 != P.ONE:
            n2, d1 = P.pexact_div(ctx, n2, g2), P.pexact_div(ctx, d1, g2)
        num = P.pmul(ctx, n1, n2)
        den = P.pmul(ctx, d1, d2)
        lc = den[-1]
        if lc != 1:
            inv = ctx.inv(lc)
            num, den = P.pscale(ctx, num, inv), P.pscale(ctx, den, inv)
        return RatFunc(ctx, num, den, _canonical=True)

    __rmul__ = __mul__

    def inverse(self):
        if not self.num:
            raise ZeroDivisionError("inverse of the zero rational function")
        return RatFunc(self.ctx, self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        ctx = self.ctx
        return RatFunc(ctx, P.ppow(ctx, self.num, e), P.ppow(ctx, self.den, e), _canonical=True)

    def __eq__(self, other):
        if isinstance(other, int):
            other = RatFunc.const(self.ctx, self.ctx.from_int(other))
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    @property
    def key(self):
        return (self.num, self.den)

    def pth_power(self):
        """self^p, computed as Frobenius on coefficients and x -> x^p."""
        ctx = self.ctx
        return RatFunc(ctx, P.pth_power(ctx, self.num), P.pth_power(ctx, self.den),
                       _canonical=True)

    def eval0(self):
        """Value at x = 0; raises ZeroDivisionError at a pole."""
        den0 = self.den[0] if self.den else 0
        if not den0:
            raise ZeroDivisionError("pole at x = 0")
        num0 = self.num[0] if self.num else 0
        return self.ctx.div(num0, den0)

    def format(self, var="x"):
        ctx = self.ctx
        n = P.pformat(ctx, self.num, var)
        if self.den == P.ONE:
            return n
        return f"({n})/({P.pformat(ctx, self.den, var)})"

    def __repr__(self):
        return f"RatFunc({self.format()})"


def ratfunc_canon(ctx, num, den):
    """Canonical form of num/den; raises ZeroDivisionError when den = 0."""
    return RatFunc(ctx, num, den)
