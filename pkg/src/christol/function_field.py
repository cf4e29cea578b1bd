"""The function field K = F_q(x)[y]/(f) of a plane curve and the decimation
operators Lambda_i acting on it.

Elements of K are stored by their coordinates in the basis 1, y, ..., y^(d-1)
over F_q(x). Lambda_i is computed exactly through the decomposition of K
over its subfield K^p: every u in K is uniquely u = sum_j x^j v_j^p, and
Lambda_j(u) = v_j. On power series this is the map
sum a(n) x^n -> sum a(pn + j)^(1/p) x^n.
"""

from functools import cached_property

from .algebra import poly as P
from .algebra.linalg import ratmat_inverse
from .algebra.ratfunc import RatFunc
from .errors import InseparableCurveError, NotInvertibleError, UserInputError


# -- polynomials in T over F_q(x), as lists of RatFunc (constant first) -----


def _tp_trim(a):
    a = list(a)
    while a and not a[-1]:
        a.pop()
    return a


def _tp_divmod(ctx, a, b):
    a = list(a)
    inv_lc = b[-1].inverse()
    quot = [RatFunc.zero(ctx)] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1]
        if c:
            c = c * inv_lc
            quot[k] = c
            for j, bj in enumerate(b):
                if bj:
                    a[k + j] = a[k + j] - c * bj
    return _tp_trim(quot), _tp_trim(a[:len(b) - 1])


def _tp_sub(a, b):
    n = max(len(a), len(b))
    out = []
    for k in range(n):
        if k < len(a) and k < len(b):
            out.append(a[k] - b[k])
        elif k < len(a):
            out.append(a[k])
        else:
            out.append(-b[k])
    return _tp_trim(out)


def _tp_mul(ctx, a, b):
    if not a or not b:
        return []
    out = [RatFunc.zero(ctx)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = out[i + j] + x * y
    return _tp_trim(out)


def _tp_monic(a):
    inv = a[-1].inverse()
    return [c * inv for c in a]


def _tp_gcdex(ctx, a, b):
    """(g, s) with s*a = g mod b, g monic."""
    r0, r1 = _tp_trim(a), _tp_trim(b)
    s0, s1 = [RatFunc.one(ctx)], []
    while r1:
        q, r = _tp_divmod(ctx, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, _tp_sub(s0, _tp_mul(ctx, q, s1))
    inv = r0[-1].inverse()
    return [c * inv for c in r0], [c * inv for c in s0]


def _parse_table(ctx, table):
    """Normalize a coefficient table into {(x_exp, T_exp): nonzero code}."""
    out = {}
    if isinstance(table, dict):
        items = table.items()
    else:
        items = (((i, j), c) for i, row in enumerate(table) for j, c in enumerate(row))
    for (i, j), c in items:
        if i < 0 or j < 0:
            raise UserInputError("negative exponent in curve table")
        if not 0 <= c < ctx.q:
            raise UserInputError(f"coefficient {c} is not an element code of F_{ctx.q}")
        if c:
            out[(i, j)] = ctx.add(out.get((i, j), 0), c)
            if not out[(i, j)]:
                del out[(i, j)]
    return out


class PlaneCurve:
    """f(x, T) = sum c[i][j] x^i T^j over F_q, with y a root of f in K."""

    def __init__(self, ctx, table):
        self.ctx = ctx
        coeffs = _parse_table(ctx, table)
        if not coeffs:
            raise UserInputError("the curve polynomial is zero")
        self.table = coeffs
        self.d = max(j for _, j in coeffs)
        self.h = max(i for i, _ in coeffs)
        if self.d < 1:
            raise UserInputError("the curve polynomial has T-degree 0")
        cols = [[0] * (self.h + 1) for _ in range(self.d + 1)]
        for (i, j), c in coeffs.items():
            cols[j][i] = c
        # f as a polynomial in T with coefficients in F_q[x]
        self.fT = tuple(P.trim(tuple(col)) for col in cols)
        self._check_separable()
        lead = RatFunc.poly(ctx, self.fT[-1])
        # y^d = sum_j reduction[j] y^j
        self.reduction = tuple(-(RatFunc.poly(ctx, self.fT[j]) / lead) for j in range(self.d))

    def _check_separable(self):
        ctx = self.ctx
        f = [RatFunc.poly(ctx, c) for c in self.fT]
        df = _tp_trim([f[j] * j for j in range(1, len(f))])
        if not df:
            raise InseparableCurveError(
                "f is a polynomial in T^p, so x is not a separating variable")
        g, _ = _tp_gcdex(ctx, f, df)
        if len(g) > 1:
            raise InseparableCurveError(
                f"gcd(f, df/dT) has T-degree {len(g) - 1}; the extension is inseparable")

    def format(self):
        ctx = self.ctx
        terms = []
        for j in range(self.d, -1, -1):
            c = self.fT[j]
            if not c:
                continue
            cs = P.pformat(ctx, c)
            if j == 0:
                terms.append(cs)
                continue
            mono = "T" if j == 1 else f"T^{j}"
            if c == P.ONE:
                terms.append(mono)
            else:
                terms.append(f"{cs}*{mono}" if len(c) == 1 else f"({cs})*{mono}")
        return " + ".join(terms)

    def __repr__(self):
        return f"PlaneCurve({self.format()} over F_{self.ctx.q})"

    # -- element construction ---------------------------------------------

    def element(self, coords):
        coords = [c if isinstance(c, RatFunc) else RatFunc.poly(self.ctx, c) for c in coords]
        if len(coords) > self.d:
            raise UserInputError("too many coordinates for this curve")
        coords += [RatFunc.zero(self.ctx)] * (self.d - len(coords))
        return FFElem(self, tuple(coords))

    def zero(self):
        return FFElem(self, (RatFunc.zero(self.ctx),) * self.d)

    def one(self):
        return self.scalar(RatFunc.one(self.ctx))

    def scalar(self, c):
        if isinstance(c, int):
            c = RatFunc.const(self.ctx, c)
        return FFElem(self, (c,) + (RatFunc.zero(self.ctx),) * (self.d - 1))

    def x(self):
        return self.scalar(RatFunc.poly(self.ctx, P.X))

    def y(self):
        if self.d == 1:
            return self.scalar(self.reduction[0])
        return self.element([P.ZERO, P.ONE])

    # -- the decomposition of K over K^p ----------------------------------

    @cached_property
    def _decomposition(self):
        """Precomputed data for Lambda_i.

        With z = x^p, K has basis {x^a y^e : a < p, e < d} over F_q(z),
        and {x^j (y^p)^b} is another basis. M holds the coordinates of the
        second basis in the first; row (i, b) of M^-1 turns coordinates of
        u into the F_q(z)-coefficient of x^i (y^p)^b. Taking p-th roots of
        those entries (z -> x) gives the table used by :meth:`lambda_p`.
        """
        ctx, p, d = self.ctx, self.ctx.p, self.d
        yp = self.y() ** p
        cols = []
        ypb = self.one()
        for _b in range(d):
            xj = ypb
            for _j in range(p):
                cols.append(_zcoords(ctx, xj))
                xj = xj * self.x()
            ypb = ypb * yp
        # column index = b * p + j; row index = e * p + a
        n = p * d
        M = [[cols[c][r] for c in range(n)] for r in range(n)]
        try:
            Minv = ratmat_inverse(ctx, M)
        except ZeroDivisionError:
            raise InseparableCurveError(
                "the change-of-basis matrix over K^p is singular") from None
        tables = []
        for i in range(p):
            # tau[b][e * p + a] = root of Minv[b*p + i][e*p + a]
            entries = [[_root(ctx, Minv[b * p + i][k]) for k in range(n)] for b in range(d)]
            den = P.ONE
            for row in entries:
                for e in row:
                    if e.num:
                        den = P.plcm(ctx, den, e.den)
            nums = [[P.pmul(ctx, e.num, P.pexact_div(ctx, den, e.den)) if e.num else P.ZERO
                     for e in row] for row in entries]
            tables.append((den, nums))
        return tables

    def lambda_p(self, i, u):
        """Lambda_i(u) for a digit 0 <= i < p."""
        ctx, p, d = self.ctx, self.ctx.p, self.d
        if not 0 <= i < p:
            raise UserInputError(f"digit {i} out of range 0..{p - 1}")
        if not any(u.coords):
            return u
        E, tau = self._decomposition[i]
        D = P.ONE
        for c in u.coords:
            if c.den != P.ONE:
                D = P.plcm(ctx, D, c.den)
        Dp1 = P.ppow(ctx, D, p - 1)
        S = []
        for c in u.coords:
            if not c.num:
                S.extend([P.ZERO] * p)
                continue
            num = P.pmul(ctx, c.num, P.pexact_div(ctx, D, c.den)) if c.den != D else c.num
            Q = P.pmul(ctx, num, Dp1)
            S.extend(P.pfrob_inv(ctx, part) for part in P.split_residues(Q, p))
        den = P.pmul(ctx, D, E)
        out = []
        for b in range(d):
            acc = P.ZERO
            for s, t in zip(S, tau[b]):
                if s and t:
                    acc = P.padd(ctx, acc, P.pmul(ctx, s, t))
            out.append(RatFunc(ctx, acc, den))
        return FFElem(self, tuple(out))

    def kp_decompose(self, u):
        """[v_0, ..., v_(p-1)] with u = sum_j x^j v_j^p."""
        return [self.lambda_p(j, u) for j in range(self.ctx.p)]

    def lambda_q(self, c, u):
        """Decimation by q = p^r: the series map sum a(n) x^n -> sum a(qn + c) x^n."""
        p, q = self.ctx.p, self.ctx.q
        if not 0 <= c < q:
            raise UserInputError(f"digit {c} out of range 0..{q - 1}")
        for _ in range(self.ctx.r):
            c, i = divmod(c, p)
            u = self.lambda_p(i, u)
        return u

    def lambda_q_all(self, u):
        """[lambda_q(c, u) for c in range(q)], sharing intermediate results."""
        p = self.ctx.p
        level = [u]
        for k in range(self.ctx.r):
            # index of an entry is its digit value c mod p^(k+1)
            nxt = [None] * (len(level) * p)
            for low, w in enumerate(level):
                for i in range(p):
                    nxt[low + i * p ** k] = self.lambda_p(i, w)
            level = nxt
        return level


def _zcoords(ctx, w):
    """Coordinates of w in the basis {x^a y^e} over F_q(z), z = x^p.

    Returned as a flat list indexed by e * p + a, entries in the variable z.
    """
    p = ctx.p
    out = []
    for c in w.coords:
        if not c.num:
            out.extend([RatFunc.zero(ctx)] * p)
            continue
        # n/d = n d^(p-1) / d^p and d^p is a polynomial in z
        num = P.pmul(ctx, c.num, P.ppow(ctx, c.den, p - 1))
        den_z = P.pfrob(ctx, c.den)
        out.extend(RatFunc(ctx, part, den_z) for part in P.split_residues(num, p))
    return out


def _root(ctx, a):
    """p-th root of a(z) in F_q(z), expressed in x."""
    if not a.num:
        return a
    return RatFunc(ctx, P.pfrob_inv(ctx, a.num), P.pfrob_inv(ctx, a.den), _canonical=True)


class FFElem:
    """sum coords[b] y^b in K."""

    __slots__ = ("curve", "coords")

    def __init__(self, curve, coords):
        self.curve = curve
        self.coords = coords

    @property
    def key(self):
        return tuple(c.key for c in self.coords)

    def __eq__(self, other):
        if not isinstance(other, FFElem):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.key)

    def __bool__(self):
        return any(self.coords)

    def __add__(self, other):
        other = self._lift(other)
        return FFElem(self.curve, tuple(a + b for a, b in zip(self.coords, other.coords)))

    __radd__ = __add__

    def __neg__(self):
        return FFElem(self.curve, tuple(-a for a in self.coords))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return (-self) + other

    def _lift(self, other):
        if isinstance(other, FFElem):
            return other
        if isinstance(other, (int, RatFunc)):
            return self.curve.scalar(other)
        raise TypeError(f"cannot combine FFElem with {type(other).__name__}")

    def __mul__(self, other):
        if isinstance(other, (int, RatFunc)):
            if isinstance(other, int):
                other = RatFunc.const(self.curve.ctx, other)
            return FFElem(self.curve, tuple(a * other for a in self.coords))
        curve = self.curve
        ctx, d = curve.ctx, curve.d
        prod = _tp_mul(ctx, list(self.coords), list(other.coords))
        red = curve.reduction
        for k in range(len(prod) - 1, d - 1, -1):
            c = prod[k]
            if c:
                for j in range(d):
                    if red[j]:
                        prod[k - d + j] = prod[k - d + j] + c * red[j]
        prod = prod[:d] + [RatFunc.zero(ctx)] * (d - len(prod))
        return FFElem(curve, tuple(prod))

    __rmul__ = __mul__

    def __pow__(self, e):
        if e < 0:
            return self.inverse() ** (-e)
        result = self.curve.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def inverse(self):
        curve = self.curve
        ctx = curve.ctx
        a = _tp_trim(list(self.coords))
        if not a:
            raise ZeroDivisionError("inverse of zero in K")
        f = [RatFunc.poly(ctx, c) for c in curve.fT]
        g, s = _tp_gcdex(ctx, a, f)
        if len(g) > 1:
            raise NotInvertibleError(
                "element shares a factor with f; the curve polynomial is reducible",
                factor=g)
        s = _tp_divmod(ctx, s, f)[1]
        s = s + [RatFunc.zero(ctx)] * (curve.d - len(s))
        return FFElem(curve, tuple(s))

    def __truediv__(self, other):
        return self * self._lift(other).inverse()

    def format(self):
        terms = []
        for b, c in enumerate(self.coords):
            if not c:
                continue
            cs = c.format()
            mono = "" if b == 0 else ("y" if b == 1 else f"y^{b}")
            if not mono:
                terms.append(cs)
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"({cs})*{mono}")
        return " + ".join(terms) if terms else "0"

    def __repr__(self):
        return f"FFElem({self.format()})"


def curve_new(ctx, table):
    return PlaneCurve(ctx, table)


def ff_arith(curve, a, b=None, op="add"):
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    raise UserInputError(f"unknown operation {op!r}")


def kp_decompose(curve, u):
    return curve.kp_decompose(u)


def lambda_p(curve, i, u):
    return curve.lambda_p(i, u)


def lambda_q(curve, c, u):
    return curve.lambda_q(c, u)
