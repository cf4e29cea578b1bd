"""Finite fields F_q with q = p^r.

An element of F_q is encoded as an int in ``range(q)``. For r = 1 this is
the residue mod p. For r > 1 the base-p digits of the code, least
significant first, are the coefficient vector of the reduced residue
representative in F_p[t]/(m(t)); :meth:`FieldCtx.vector` and
:meth:`FieldCtx.element` convert between the two views.
"""

from functools import cached_property

from ..errors import FieldError
from . import poly as P

# full addition tables are built only up to this order
_ADD_TABLE_LIMIT = 256


def is_prime(n):
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    k = 3
    while k * k <= n:
        if n % k == 0:
            return False
        k += 2
    return True


def prime_factors(n):
    out = []
    k = 2
    while k * k <= n:
        if n % k == 0:
            out.append(k)
            while n % k == 0:
                n //= k
        k += 1
    if n > 1:
        out.append(n)
    return out


def is_irreducible(ctx, f):
    """Rabin-style test over the field of ``ctx``: f has no factor of degree <= deg(f)/2."""
    n = P.deg(f)
    if n < 1:
        return False
    if n == 1:
        return True
    f = P.pmonic(ctx, f)[1]
    xq = P.X
    for _ in range(n // 2):
        xq = P.ppowmod(ctx, xq, ctx.q, f)
        if P.pgcd(ctx, P.psub(ctx, xq, P.X), f) != P.ONE:
            return False
    return True


def smallest_irreducible(ctx, degree):
    """Smallest monic irreducible of the given degree.

    Candidates are ordered by the integer whose base-q digits are the
    non-leading coefficients, constant term least significant.
    """
    q = ctx.q
    for k in range(q ** degree):
        coeffs = []
        for _ in range(degree):
            k, c = divmod(k, q)
            coeffs.append(c)
        f = tuple(coeffs) + (1,)
        if is_irreducible(ctx, f):
            return f
    raise FieldError(f"no irreducible polynomial of degree {degree}")


class FieldCtx:
    """The field F_q together with its arithmetic.

    Instances are immutable after construction and safe to share.
    """

    def __init__(self, p, r=1, modulus=None):
        if not is_prime(p):
            raise FieldError(f"characteristic {p} is not prime")
        if r < 1:
            raise FieldError(f"extension degree must be positive, got {r}")
        self.p = p
        self.r = r
        self.q = p ** r
        if r == 1:
            if modulus is not None and len(P.trim(tuple(modulus))) not in (0, 2):
                raise FieldError("a modulus for r = 1 must have degree 1")
            self.modulus = None
            return
        base = FieldCtx(p)
        if modulus is None:
            mod = smallest_irreducible(base, r)
        else:
            mod = P.trim(tuple(int(c) % p for c in modulus))
            if P.deg(mod) != r:
                raise FieldError(f"modulus has degree {P.deg(mod)}, expected {r}")
            mod = P.pmonic(base, mod)[1]
            if not is_irreducible(base, mod):
                raise FieldError(f"modulus {P.pformat(base, mod, 't')} is reducible over F_{p}")
        self.modulus = mod
        self._build_tables(base)

    def _build_tables(self, base):
        p, q = self.p, self.q
        vecs = [self._digits(a) for a in range(q)]
        self._vecs = vecs
        mod = self.modulus

        def code(v):
            return sum(c * p ** i for i, c in enumerate(v))

        def slow_mul(a, b):
            prod = P.pmod(base, P.pmul(base, P.trim(vecs[a]), P.trim(vecs[b])), mod)
            return code(prod)

        # a primitive element gives exp/log tables; codes 0 and 1 never qualify
        order = q - 1
        for g in range(2, q):
            powers = [1]
            for _ in range(order - 1):
                powers.append(slow_mul(powers[-1], g))
            if len(set(powers)) == order:
                break
        self._exp = powers + powers
        self._log = [0] * q
        for k, a in enumerate(powers):
            self._log[a] = k
        if q <= _ADD_TABLE_LIMIT:
            self._add_table = [[code([(x + y) % p for x, y in zip(vecs[a], vecs[b])])
                                for b in range(q)] for a in range(q)]
        else:
            self._add_table = None
        self._frob = [self._pow_slow(a, p) for a in range(q)]
        self._root = [0] * q
        for a in range(q):
            self._root[self._frob[a]] = a

    def _digits(self, a):
        out = []
        for _ in range(self.r):
            a, c = divmod(a, self.p)
            out.append(c)
        return out

    def _pow_slow(self, a, e):
        if a == 0:
            return 0 if e else 1
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    # -- element arithmetic ---------------------------------------------

    def add(self, a, b):
        if self.r == 1:
            return (a + b) % self.p
        if self._add_table is not None:
            return self._add_table[a][b]
        va, vb = self._vecs[a], self._vecs[b]
        return sum(((x + y) % self.p) * self.p ** i for i, (x, y) in enumerate(zip(va, vb)))

    def neg(self, a):
        if self.r == 1:
            return (-a) % self.p
        return sum(((-c) % self.p) * self.p ** i for i, c in enumerate(self._vecs[a]))

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.r == 1:
            return a * b % self.p
        if not a or not b:
            return 0
        return self._exp[self._log[a] + self._log[b]]

    def inv(self, a):
        if not a:
            raise ZeroDivisionError("inverse of zero in F_q")
        if self.r == 1:
            return pow(a, -1, self.p)
        return self._exp[(-self._log[a]) % (self.q - 1)]

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e):
        if self.r == 1:
            if e < 0:
                a, e = self.inv(a), -e
            return pow(a, e, self.p)
        if e < 0:
            a, e = self.inv(a), -e
        return self._pow_slow(a, e)

    def frob(self, a):
        """a -> a^p."""
        if self.r == 1:
            return a
        return self._frob[a]

    def pth_root(self, a):
        """The unique b with b^p = a, i.e. a^(p^(r-1))."""
        if self.r == 1:
            return a
        return self._root[a]

    def from_int(self, n):
        """Image of the integer n under Z -> F_p -> F_q."""
        return n % self.p

    def vector(self, a):
        return tuple(self._digits(a))

    def element(self, vec):
        vec = list(vec) + [0] * (self.r - len(vec))
        if len(vec) > self.r:
            raise FieldError("coefficient vector longer than the extension degree")
        return sum((c % self.p) * self.p ** i for i, c in enumerate(vec))

    def elements(self):
        return range(self.q)

    def format(self, a):
        if a < self.p:
            return str(a)
        return f"[{P.pformat(FieldCtx(self.p), P.trim(self._digits(a)), 't')}]"

    @cached_property
    def generator(self):
        """A primitive element of F_q^x."""
        if self.r > 1:
            return self._exp[1]
        if self.q == 2:
            return 1
        order = self.q - 1
        for g in range(2, self.q):
            if all(pow(g, order // l, self.q) != 1 for l in prime_factors(order)):
                return g

    def __eq__(self, other):
        return (isinstance(other, FieldCtx) and self.p == other.p and self.r == other.r
                and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.r, self.modulus))

    def __repr__(self):
        if self.r == 1:
            return f"FieldCtx(F_{self.p})"
        return f"FieldCtx(F_{self.q}, modulus={self.modulus})"


def fq_ctx_new(p, r=1, modulus=None):
    """Build F_{p^r}; the modulus defaults to the smallest irreducible of degree r."""
    return FieldCtx(p, r, modulus)


def fq_pth_root(ctx, a):
    return ctx.pth_root(a)


def primitive_polynomial(ctx, h):
    """Smallest monic degree-h polynomial over F_q whose root generates F_{q^h}^x.

    Ordering as in :func:`smallest_irreducible`. x has multiplicative order
    q^h - 1 modulo such a polynomial, which also forces irreducibility.
    """
    q = ctx.q
    order = q ** h - 1
    factors = prime_factors(order) if order > 1 else []
    for k in range(q ** h):
        tail = []
        for _ in range(h):
            k, c = divmod(k, q)
            tail.append(c)
        f = tuple(tail) + (1,)
        if not f[0]:
            continue
        if P.ppowmod(ctx, P.X, order, f) != P.ONE:
            continue
        if all(P.ppowmod(ctx, P.X, order // l, f) != P.ONE for l in factors):
            return f
    raise FieldError(f"no primitive polynomial of degree {h} over F_{q}")
