"""Truncated power series over F_q.

A :class:`TruncSeries` stores the coefficients a(0..N-1) of a power series;
everything from index N on is unknown. Products go through numpy
convolutions: directly for prime fields and digit by digit (with a final
reduction modulo the field polynomial) for extension fields.
"""

import numpy as np

from .algebra import poly as P
from .errors import BranchError, PoleError, PrecisionError, UserInputError


class TruncSeries:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx, coeffs):
        coeffs = tuple(coeffs)
        if not coeffs:
            raise UserInputError("a truncated series needs precision at least 1")
        self.ctx = ctx
        self.coeffs = coeffs

    @property
    def precision(self):
        return len(self.coeffs)

    def __len__(self):
        return len(self.coeffs)

    def __getitem__(self, n):
        return self.coeffs[n]

    def __eq__(self, other):
        return isinstance(other, TruncSeries) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def truncate(self, n):
        if n > len(self.coeffs):
            raise PrecisionError(f"series known to precision {len(self.coeffs)}, asked for {n}",
                                 required=n)
        return TruncSeries(self.ctx, self.coeffs[:n])

    def __add__(self, other):
        n = min(len(self), len(other))
        add = self.ctx.add
        return TruncSeries(self.ctx, [add(a, b) for a, b in zip(self.coeffs[:n], other.coeffs[:n])])

    def __neg__(self):
        return TruncSeries(self.ctx, [self.ctx.neg(a) for a in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            mul = self.ctx.mul
            return TruncSeries(self.ctx, [mul(a, other) for a in self.coeffs])
        n = min(len(self), len(other))
        return TruncSeries(self.ctx, series_mul(self.ctx, self.coeffs, other.coeffs, n))

    __rmul__ = __mul__

    def format(self):
        fmt = self.ctx.format
        return ",".join(fmt(a) for a in self.coeffs)

    def __repr__(self):
        head = ", ".join(self.ctx.format(a) for a in self.coeffs[:12])
        more = ", ..." if len(self) > 12 else ""
        return f"TruncSeries([{head}{more}], N={len(self)})"


def _conv_int(a, b, n, bound):
    """Integer convolution of a and b truncated to n terms."""
    a, b = a[:n], b[:n]
    if not a or not b:
        return [0] * n
    if min(len(a), len(b)) * bound < 2 ** 62:
        out = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))[:n]
        out = out.tolist()
    else:
        out = np.convolve(np.asarray(a, dtype=object), np.asarray(b, dtype=object))[:n].tolist()
    return out + [0] * (n - len(out))


def series_mul(ctx, a, b, n):
    """First n coefficients of the product of two coefficient sequences."""
    p = ctx.p
    if ctx.r == 1:
        return [c % p for c in _conv_int(list(a), list(b), n, (p - 1) ** 2)]
    r = ctx.r
    da = [[ctx.vector(c)[k] for c in a[:n]] for k in range(r)]
    db = [[ctx.vector(c)[k] for c in b[:n]] for k in range(r)]
    # digit polynomial in t of degree <= 2r - 2, then reduce with t^s mod m(t)
    acc = [[0] * n for _ in range(2 * r - 1)]
    for i in range(r):
        for j in range(r):
            conv = _conv_int(da[i], db[j], n, (p - 1) ** 2)
            row = acc[i + j]
            for k in range(n):
                row[k] += conv[k]
    powers = _tpowers(ctx)
    out = [0] * n
    digits = [[0] * n for _ in range(r)]
    for s in range(2 * r - 1):
        vec = powers[s]
        for k in range(r):
            if vec[k]:
                target, src, c = digits[k], acc[s], vec[k]
                for m in range(n):
                    target[m] += c * src[m]
    for m in range(n):
        out[m] = sum((digits[k][m] % p) * p ** k for k in range(r))
    return out


_TPOWER_CACHE = {}


def _tpowers(ctx):
    """Coefficient vectors of t^s mod m(t) for s < 2r - 1."""
    key = (ctx.p, ctx.r, ctx.modulus)
    if key not in _TPOWER_CACHE:
        from .algebra.field import FieldCtx
        base = FieldCtx(ctx.p)
        rows = []
        for s in range(2 * ctx.r - 1):
            red = P.pmod(base, P.monomial(1, s), ctx.modulus)
            rows.append(list(red) + [0] * (ctx.r - len(red)))
        _TPOWER_CACHE[key] = rows
    return _TPOWER_CACHE[key]


def series_inv(ctx, a, n):
    """First n coefficients of 1/a; a[0] must be nonzero."""
    if not a or not a[0]:
        raise ZeroDivisionError("series with zero constant term is not invertible")
    inv = [ctx.inv(a[0])]
    k = 1
    while k < n:
        k = min(2 * k, n)
        # inv <- inv * (2 - a * inv)
        e = series_mul(ctx, a, inv, k)
        e = [ctx.neg(c) for c in e]
        e[0] = ctx.add(e[0], ctx.from_int(2))
        inv = series_mul(ctx, inv, e, k)
    return inv[:n]


def series_of_poly(ctx, a, n):
    out = list(a[:n])
    return out + [0] * (n - len(out))


def series_of_ratfunc(ctx, c, n):
    """Expansion of a RatFunc at x = 0 to n terms; PoleError at a pole."""
    if not c.num:
        return [0] * n
    if not c.den[0]:
        raise PoleError(f"{c.format()} has a pole at x = 0")
    num = series_of_poly(ctx, c.num, n)
    if c.den == P.ONE:
        return num
    return series_mul(ctx, num, series_inv(ctx, series_of_poly(ctx, c.den, n), n), n)


def eval_curve(curve, s, n=None):
    """f(x, s) to precision n (default: precision of s)."""
    ctx = curve.ctx
    n = len(s) if n is None else n
    acc = [0] * n
    for j in range(curve.d, -1, -1):
        acc = series_mul(ctx, acc, s.coeffs, n) if j < curve.d else acc
        col = curve.fT[j]
        for k, c in enumerate(col[:n]):
            acc[k] = ctx.add(acc[k], c)
    return acc


def _eval_deriv(curve, s, n):
    ctx = curve.ctx
    acc = [0] * n
    for j in range(curve.d, 0, -1):
        if j < curve.d:
            acc = series_mul(ctx, acc, s, n)
        col = curve.fT[j]
        jj = ctx.from_int(j)
        for k, c in enumerate(col[:n]):
            acc[k] = ctx.add(acc[k], ctx.mul(jj, c))
    return acc


def check_branch_point(curve, a0):
    """Raise BranchError unless a0 is a simple root of f(0, T)."""
    ctx = curve.ctx
    if not 0 <= a0 < ctx.q:
        raise UserInputError(f"a0 = {a0} is not an element of F_{ctx.q}")
    f0 = P.trim(tuple(col[0] if col else 0 for col in curve.fT))
    if P.peval(ctx, f0, a0):
        raise BranchError(f"a0 = {ctx.format(a0)} is not a root of f(0, T)")
    if not P.peval(ctx, P.pderiv(ctx, f0), a0):
        raise BranchError(
            f"df/dT vanishes at (0, {ctx.format(a0)}): the branch is ramified or singular; "
            "supply the series coefficients directly instead")


def hensel_expand(curve, a0, N):
    """The power series root y of f with y(0) = a0, to precision N.

    Newton iteration doubles the precision at each step.
    """
    ctx = curve.ctx
    if N < 1:
        raise UserInputError("precision must be at least 1")
    check_branch_point(curve, a0)
    y = [a0]
    k = 1
    while k < N:
        k2 = min(2 * k, N)
        ys = y + [0] * (k2 - len(y))
        fy = eval_curve(curve, TruncSeries(ctx, ys), k2)
        dinv = series_inv(ctx, _eval_deriv(curve, ys[:k], k), k)
        corr = series_mul(ctx, fy, dinv, k2)
        y = [ctx.sub(a, b) for a, b in zip(ys, corr)]
        k = k2
    return TruncSeries(ctx, y[:N])


def trunc_lambda(ctx, i, s):
    """Coefficients n -> a(pn + i)^(1/p), to the precision they are known."""
    p = ctx.p
    if not 0 <= i < p:
        raise UserInputError(f"digit {i} out of range 0..{p - 1}")
    n = (len(s) - i - 1) // p + 1
    if n < 1:
        raise PrecisionError(f"a series of precision {len(s)} has no coefficient at index {i}",
                             required=i + 1)
    root = ctx.pth_root
    return TruncSeries(ctx, [root(a) for a in s.coeffs[i::p]])


def trunc_lambda_q(ctx, c, s):
    """Coefficients n -> a(qn + c)."""
    for _ in range(ctx.r):
        c, i = divmod(c, ctx.p)
        s = trunc_lambda(ctx, i, s)
    return s


def series_frob(ctx, s):
    """s^p, known to precision p * N."""
    p = ctx.p
    out = [0] * (len(s) * p)
    for n, a in enumerate(s.coeffs):
        out[n * p] = ctx.frob(a)
    return TruncSeries(ctx, out)


def ff_to_series(curve, branch, u, N=None):
    """The power series of u = sum coords[b] y^b with y the given branch.

    Coordinates may have x^k in their denominator as long as the combined
    element has no pole; each such power costs k coefficients of precision.
    """
    ctx = curve.ctx
    D = P.ONE
    for c in u.coords:
        if c.num and c.den != P.ONE:
            D = P.plcm(ctx, D, c.den)
    k = 0
    while not D[k]:
        k += 1
    avail = len(branch) - k
    if N is None:
        N = avail
    if N > avail:
        raise PrecisionError(
            f"branch precision {len(branch)} gives only {max(avail, 0)} coefficients here",
            required=N + k)
    if N < 1:
        raise PrecisionError("no coefficients can be recovered", required=k + 1)
    M = N + k
    acc = [0] * M
    ys = list(branch.coeffs[:M])
    for b in range(curve.d - 1, -1, -1):
        acc = series_mul(ctx, acc, ys, M)
        c = u.coords[b]
        if c.num:
            num = P.pmul(ctx, c.num, P.pexact_div(ctx, D, c.den))
            for m, a in enumerate(num[:M]):
                acc[m] = ctx.add(acc[m], a)
    if any(acc[:k]):
        raise PoleError(f"{u.format()} has a pole at x = 0 along this branch")
    acc = acc[k:]
    Dk = D[k:]
    if Dk != P.ONE:
        acc = series_mul(ctx, acc, series_inv(ctx, series_of_poly(ctx, Dk, N), N), N)
    return TruncSeries(ctx, acc[:N])


def constant_term(curve, u, a0, branch=None):
    """u evaluated at the branch point: the constant term of its series."""
    ctx = curve.ctx
    acc = 0
    try:
        for c in reversed(u.coords):
            acc = ctx.add(ctx.mul(acc, a0), c.eval0())
        return acc
    except ZeroDivisionError:
        if branch is None:
            raise PoleError("coordinate pole at x = 0 and no branch series to resolve it")
    return ff_to_series(curve, branch, u, 1)[0]


def parse_series(ctx, text):
    """Series from a comma-separated list of element codes."""
    try:
        coeffs = [int(tok) for tok in text.replace(" ", "").split(",") if tok != ""]
    except ValueError:
        raise UserInputError("branch coefficients must be comma-separated integers") from None
    if any(not 0 <= c < ctx.q for c in coeffs):
        raise UserInputError(f"branch coefficients must lie in 0..{ctx.q - 1}")
    return TruncSeries(ctx, coeffs)
