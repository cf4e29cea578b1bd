"""Dense univariate polynomials over F_q.

A polynomial is a tuple of field codes, constant term first, with no
trailing zeros. The zero polynomial is the empty tuple and has degree
``ZERO_DEGREE``. Every function takes the field context as first argument.
"""

import numpy as np

ZERO_DEGREE = -1

ZERO = ()
ONE = (1,)
X = (0, 1)

# above this length, prime-field products go through numpy
_NUMPY_THRESHOLD = 48


def trim(coeffs):
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


def deg(a):
    return len(a) - 1


def const(c):
    return (c,) if c else ()


def monomial(c, k):
    return (0,) * k + (c,) if c else ()


def padd(ctx, a, b):
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return a
    if ctx.r == 1:
        p = ctx.p
        out = [(x + y) % p for x, y in zip(a, b)]
    else:
        add = ctx.add
        out = [add(x, y) for x, y in zip(a, b)]
    out.extend(a[len(b):])
    return trim(out)


def pneg(ctx, a):
    if ctx.r == 1:
        p = ctx.p
        return tuple((-c) % p for c in a)
    neg = ctx.neg
    return tuple(neg(c) for c in a)


def psub(ctx, a, b):
    return padd(ctx, a, pneg(ctx, b))


def pscale(ctx, a, c):
    if not c:
        return ()
    if c == 1:
        return a
    if ctx.r == 1:
        p = ctx.p
        return tuple(x * c % p for x in a)
    mul = ctx.mul
    return tuple(mul(x, c) for x in a)


def pshift(a, k):
    """Multiply by x^k."""
    return (0,) * k + a if a else ()


def pmul(ctx, a, b):
    if not a or not b:
        return ()
    if len(a) == 1:
        return pscale(ctx, b, a[0])
    if len(b) == 1:
        return pscale(ctx, a, b[0])
    if ctx.r == 1:
        p = ctx.p
        if (min(len(a), len(b)) > _NUMPY_THRESHOLD
                and min(len(a), len(b)) * (p - 1) ** 2 < 2 ** 62):
            prod = np.convolve(np.array(a, dtype=np.int64), np.array(b, dtype=np.int64))
            return trim((prod % p).tolist())
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return trim([c % p for c in out])
    add, mul = ctx.add, ctx.mul
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = add(out[i + j], mul(x, y))
    return trim(out)


def ppow(ctx, a, e):
    result = ONE
    while e:
        if e & 1:
            result = pmul(ctx, result, a)
        e >>= 1
        if e:
            a = pmul(ctx, a, a)
    return result


def pdivmod(ctx, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    inv_lc = ctx.inv(b[-1])
    rem = list(a)
    nb = len(b)
    quot = [0] * (len(a) - nb + 1)
    if ctx.r == 1:
        p = ctx.p
        for k in range(len(a) - nb, -1, -1):
            c = rem[k + nb - 1] % p
            if c:
                c = c * inv_lc % p
                quot[k] = c
                for j in range(nb):
                    rem[k + j] -= c * b[j]
        return trim(quot), trim([c % p for c in rem[:nb - 1]])
    add, mul, neg = ctx.add, ctx.mul, ctx.neg
    for k in range(len(a) - nb, -1, -1):
        c = rem[k + nb - 1]
        if c:
            c = mul(c, inv_lc)
            quot[k] = c
            nc = neg(c)
            for j in range(nb):
                if b[j]:
                    rem[k + j] = add(rem[k + j], mul(nc, b[j]))
    return trim(quot), trim(rem[:nb - 1])


def pmod(ctx, a, b):
    return pdivmod(ctx, a, b)[1]


def pexact_div(ctx, a, b):
    q, r = pdivmod(ctx, a, b)
    if r:
        raise ArithmeticError("inexact polynomial division")
    return q


def pmonic(ctx, a):
    """Return (leading coefficient, monic associate)."""
    if not a:
        return 0, ()
    lc = a[-1]
    if lc == 1:
        return 1, a
    return lc, pscale(ctx, a, ctx.inv(lc))


def pgcd(ctx, a, b):
    """Monic gcd; gcd(0, 0) = 0."""
    while b:
        a, b = b, pmod(ctx, a, b)
    return pmonic(ctx, a)[1]


def pgcdex(ctx, a, b):
    """Return (g, s, t) with s*a + t*b = g and g monic."""
    r0, r1 = a, b
    s0, s1 = ONE, ()
    t0, t1 = (), ONE
    while r1:
        q, r = pdivmod(ctx, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, psub(ctx, s0, pmul(ctx, q, s1))
        t0, t1 = t1, psub(ctx, t0, pmul(ctx, q, t1))
    if not r0:
        return (), (), ()
    inv = ctx.inv(r0[-1])
    return pscale(ctx, r0, inv), pscale(ctx, s0, inv), pscale(ctx, t0, inv)


def plcm(ctx, a, b):
    if not a or not b:
        return ()
    return pmonic(ctx, pmul(ctx, pexact_div(ctx, a, pgcd(ctx, a, b)), b))[1]


def pderiv(ctx, a):
    if ctx.r == 1:
        p = ctx.p
        return trim([k * a[k] % p for k in range(1, len(a))])
    return trim([ctx.mul(ctx.from_int(k), a[k]) for k in range(1, len(a))])


def peval(ctx, a, x):
    acc = 0
    if ctx.r == 1:
        p = ctx.p
        for c in reversed(a):
            acc = (acc * x + c) % p
        return acc
    for c in reversed(a):
        acc = ctx.add(ctx.mul(acc, x), c)
    return acc


def pcompose(ctx, a, b):
    """a(b(x))."""
    acc = ()
    for c in reversed(a):
        acc = padd(ctx, pmul(ctx, acc, b), const(c))
    return acc


def ppowmod(ctx, a, e, m):
    result = pmod(ctx, ONE, m)
    a = pmod(ctx, a, m)
    while e:
        if e & 1:
            result = pmod(ctx, pmul(ctx, result, a), m)
        e >>= 1
        if e:
            a = pmod(ctx, pmul(ctx, a, a), m)
    return result


def inflate(a, k):
    """Substitute x -> x^k."""
    if k == 1 or len(a) <= 1:
        return a
    out = [0] * ((len(a) - 1) * k + 1)
    out[::k] = a
    return tuple(out)


def split_residues(a, p):
    """Write a = sum_j x^j R_j(x^p); return [R_0, ..., R_{p-1}]."""
    return [trim(a[j::p]) for j in range(p)]


def pfrob(ctx, a):
    """Raise every coefficient to the p-th power (the identity for r = 1)."""
    if ctx.r == 1:
        return a
    return tuple(ctx.frob(c) for c in a)


def pfrob_inv(ctx, a):
    """Take the p-th root of every coefficient."""
    if ctx.r == 1:
        return a
    return tuple(ctx.pth_root(c) for c in a)


def pth_power(ctx, a):
    """a(x)^p = (Frobenius of coefficients)(x^p)."""
    return inflate(pfrob(ctx, a), ctx.p)


def pformat(ctx, a, var="x"):
    if not a:
        return "0"
    terms = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        cs = ctx.format(c)
        if k == 0:
            terms.append(cs)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            terms.append(mono if c == 1 else f"{cs}*{mono}")
    return " + ".join(terms)
