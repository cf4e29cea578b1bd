"""Shared test fixtures: the worked curves and independent sequence oracles.

The oracles compute coefficients straight from closed forms (binomial
coefficients, modular powers, digit sums) so they share no code with the
series module.
"""

from math import comb

from christol.algebra import fq_ctx_new, primitive_polynomial
from christol.expr import parse_curve_expr
from christol.function_field import curve_new

THUE_MORSE_RELATION = "(1+x)^3*T^2 + (1+x)^2*T + x"


class Case:
    def __init__(self, name, ctx, curve, a0, oracle, genus, expected=None, group=None, **extra):
        self.name = name
        self.ctx = ctx
        self.curve = curve
        self.a0 = a0
        self.oracle = oracle
        self.genus = genus
        self.expected = expected
        self.group = group
        self.extra = extra

    def __repr__(self):
        return self.name


def curve_from(ctx, text):
    return curve_new(ctx, parse_curve_expr(text, ctx))


# -- oracles --------------------------------------------------------------------


def thue_morse(n):
    return [bin(k).count("1") % 2 for k in range(n)]


def powers_of_two(p, n):
    return [pow(2, k, p) for k in range(n)]


def central_binomial(p, n):
    out = []
    c = 1
    for k in range(n):
        out.append(c % p)
        c = c * 2 * (2 * k + 1) // (k + 1)
    return out


def elliptic_oracle(p, n):
    """(1 - 4x^3)^(-1/2) = sum binom(2k, k) x^(3k)."""
    out = [0] * n
    for k in range(0, (n + 2) // 3):
        if 3 * k < n:
            out[3 * k] = comb(2 * k, k) % p
    return out


def artin_schreier_oracle(ctx, Q, n):
    """Root of T^Q - T - x with y(0) = 0: y = -(x + x^Q + x^(Q^2) + ...)."""
    out = [0] * n
    e = 1
    minus_one = ctx.neg(1)
    while e < n:
        out[e] = minus_one
        e *= Q
    return out


def linear_recurrence_oracle(ctx, f, n):
    """Coefficients of 1/f - 1 by long division, f given constant term first."""
    inv0 = ctx.inv(f[0])
    out = []
    for k in range(n):
        acc = 1 if k == 0 else 0
        for j in range(1, min(k, len(f) - 1) + 1):
            acc = ctx.sub(acc, ctx.mul(f[j], out[k - j]))
        out.append(ctx.mul(acc, inv0))
    out[0] = ctx.sub(out[0], 1)
    return out


def brute_kernel_size(seq, q, depth):
    """Distinct decimations a(q^k n + c), k <= depth, compared on their known prefixes.

    Only meaningful when every decimation keeps a long prefix.
    """
    seen = set()
    for k in range(depth + 1):
        for c in range(q ** k):
            sub = tuple(seq[c::q ** k][:len(seq) // q ** depth])
            seen.add(sub)
    return len(seen)


# -- the worked curves ---------------------------------------------------------------


def geometric_cases():
    out = []
    for p, order in ((3, 2), (5, 4), (7, 3), (11, 10)):
        ctx = fq_ctx_new(p)
        out.append(Case(f"powers-of-2 mod {p}", ctx, curve_from(ctx, "(1-2*x)*T - 1"), 1,
                        lambda n, p=p: powers_of_two(p, n), 0, order, group=2))
    return out


def binomial_cases():
    out = []
    for p in (3, 5, 7):
        ctx = fq_ctx_new(p)
        out.append(Case(f"central binomial mod {p}", ctx, curve_from(ctx, "(1-4*x)*T^2 - 1"), 1,
                        lambda n, p=p: central_binomial(p, n), 0, p, group=3))
    # mod 2 the quadratic relation is inseparable; the series is 1, 0, 0, ...
    ctx = fq_ctx_new(2)
    out.append(Case("central binomial mod 2", ctx, curve_from(ctx, "T - 1"), 1,
                    lambda n: central_binomial(2, n), 0, 2, group=3))
    return out


def elliptic_cases():
    out = []
    for p in (5, 7, 11):
        ctx = fq_ctx_new(p)
        out.append(Case(f"elliptic mod {p}", ctx, curve_from(ctx, "(1-4*x^3)*T^2 - 1"), 1,
                        lambda n, p=p: elliptic_oracle(p, n), 1, 2 * p - 1, group=4))
    return out


def artin_schreier_cases():
    out = []
    for p, r, m in ((2, 1, 1), (2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 1)):
        ctx = fq_ctx_new(p, r)
        q = ctx.q
        Q = q ** m
        table = {(0, Q): 1, (0, 1): ctx.neg(1), (1, 0): ctx.neg(1)}
        out.append(Case(f"Artin-Schreier q={q} m={m}", ctx, curve_new(ctx, table), 0,
                        lambda n, ctx=ctx, Q=Q: artin_schreier_oracle(ctx, Q, n), 0, m + 2,
                        group=5, m=m))
    return out


def sharp_cases():
    out = []
    for q in (2, 3):
        ctx = fq_ctx_new(q)
        for h in (1, 2, 3):
            f = primitive_polynomial(ctx, h)
            # f*T - (1 - f) = 0, i.e. T = 1/f - 1
            table = {}
            for i, c in enumerate(f):
                if c:
                    table[(i, 1)] = c
                cc = ctx.sub(c, 1 if i == 0 else 0)
                if cc:
                    table[(i, 0)] = cc
            a0 = ctx.sub(ctx.inv(f[0]), 1)
            out.append(Case(f"rational sharp q={q} h={h}", ctx, curve_new(ctx, table), a0,
                            lambda n, ctx=ctx, f=f: linear_recurrence_oracle(ctx, f, n), 0,
                            None, group=6, h=h))
    return out


def thue_morse_case():
    ctx = fq_ctx_new(2)
    return Case("Thue-Morse", ctx, curve_from(ctx, THUE_MORSE_RELATION), 0, thue_morse, 0, 2,
                group=1)


def all_cases():
    return ([thue_morse_case()] + geometric_cases() + binomial_cases() + elliptic_cases()
            + artin_schreier_cases() + sharp_cases())


# -- random elements for the algebraic identities -------------------------------------


def property_curves():
    """(curve, a0) pairs over F_2, F_3, F_4 and F_5 with a branch at x = 0."""
    F2, F3, F4, F5 = (fq_ctx_new(2), fq_ctx_new(3), fq_ctx_new(2, 2), fq_ctx_new(5))
    t = 2  # generator of F_4
    return [
        (curve_from(F2, THUE_MORSE_RELATION), 0),
        (curve_from(F2, "T^4 + T + x"), 0),
        (curve_from(F3, "(1-x)*T^2 - 1"), 1),
        (curve_from(F3, "T^3 - T - x^2 - x"), 0),
        (curve_new(F4, {(0, 2): 1, (0, 1): 1, (1, 0): t}), 0),
        (curve_new(F4, {(1, 1): t, (0, 1): 1, (0, 0): 1}), 1),
        (curve_from(F5, "(1-4*x^3)*T^2 - 1"), 1),
        (curve_from(F5, "(1-4*x)*T^2 - 1"), 1),
    ]


def random_poly(ctx, rng, deg, nonzero_at_0=False):
    coeffs = [rng.randrange(ctx.q) for _ in range(rng.randint(0, deg) + 1)]
    if nonzero_at_0:
        coeffs[0] = rng.randrange(1, ctx.q)
    return tuple(coeffs)


def random_ratfunc(ctx, rng, deg=3, regular=False):
    """Random element of F_q(x); unless regular, the denominator may vanish at 0."""
    from christol.algebra import RatFunc
    from christol.algebra import poly as P

    num = P.trim(random_poly(ctx, rng, deg))
    den = P.trim(random_poly(ctx, rng, max(deg - 1, 0), nonzero_at_0=True))
    if not regular and rng.random() < 0.3:
        den = P.pshift(den, 1)
    return RatFunc(ctx, num, den)


def random_element(curve, rng, deg=3, regular=False):
    """A random element of K; with regular=True every coordinate is regular at 0."""
    return curve.element([random_ratfunc(curve.ctx, rng, deg, regular) for _ in range(curve.d)])


# -- acceptance summary --------------------------------------------------------------

CRITERIA = {}


def report(k, ok, detail):
    """Record and print the one-line verdict of acceptance criterion k."""
    line = f"criterion {k:>2}: {'PASS' if ok else 'FAIL'} - {detail}"
    CRITERIA[k] = line
    print(line)
    return ok
