"""Rational power series over Q reduced modulo many primes.

A rational y = num/den in Q(x) with den(0) != 0 has p-kernel sizes N_p that
stay bounded over all primes exactly when y has at worst simple poles, all
at roots of unity (a pole at infinity is allowed). :func:`classify_bounded`
decides this without factoring over Q and :func:`prime_sweep` measures N_p.
"""

import json
from fractions import Fraction
from math import gcd, lcm

from .algebra.field import FieldCtx, is_prime
from .errors import ComputationRefused, UserInputError
from .function_field import PlaneCurve
from .kernel import enumerate_kernel

HEADER = "rational series over Q only; other number fields are not supported"


# -- dense polynomials over Q, constant term first -------------------------------


def _qtrim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _qdivmod(a, b):
    a = [Fraction(c) for c in a]
    b = _qtrim([Fraction(c) for c in b])
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    for k in range(len(a) - len(b), -1, -1):
        c = a[k + len(b) - 1] / b[-1]
        quot[k] = c
        if c:
            for j, bj in enumerate(b):
                a[k + j] -= c * bj
    return _qtrim(quot), _qtrim(a[:len(b) - 1])


def _qgcd(a, b):
    a, b = _qtrim(a), _qtrim(b)
    while b:
        a, b = b, _qdivmod(a, b)[1]
    if not a:
        return []
    return [Fraction(c) / a[-1] for c in a]


def _qmul(a, b):
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _qderiv(a):
    return _qtrim([k * a[k] for k in range(1, len(a))])


def _totient(m):
    result, n, k = m, m, 2
    while k * k <= n:
        if n % k == 0:
            while n % k == 0:
                n //= k
            result -= result // k
        k += 1
    if n > 1:
        result -= result // n
    return result


class RationalSeriesQ:
    """y = num/den with integer coefficients, constant term first."""

    def __init__(self, num, den):
        num, den = _qtrim(num), _qtrim(den)
        if not den:
            raise UserInputError("denominator is zero")
        if den[0] == 0:
            raise UserInputError("den(0) = 0: the rational function has no power series at 0")
        g = _qgcd(num, den)
        if len(g) > 1:
            num = _qdivmod(num, g)[0]
            den = _qdivmod(den, g)[0]
        # integer coefficients, den(0) > 0, common content removed
        scale = 1
        for c in list(num) + list(den):
            scale = lcm(scale, Fraction(c).denominator)
        num = [int(Fraction(c) * scale) for c in num]
        den = [int(Fraction(c) * scale) for c in den]
        content = 0
        for c in num + den:
            content = gcd(content, c)
        sign = -1 if den[0] < 0 else 1
        self.num = tuple(sign * c // content for c in num)
        self.den = tuple(sign * c // content for c in den)

    def coefficients(self, n):
        """First n coefficients of the expansion as Fractions."""
        out = []
        d0 = Fraction(self.den[0])
        for k in range(n):
            acc = Fraction(self.num[k]) if k < len(self.num) else Fraction(0)
            for j in range(1, min(k, len(self.den) - 1) + 1):
                acc -= self.den[j] * out[k - j]
            out.append(acc / d0)
        return out

    def __repr__(self):
        return f"RationalSeriesQ(num={list(self.num)}, den={list(self.den)})"


def from_curve_table(table):
    """num/den from an integer table of den*T - num (T-degree exactly 1)."""
    if any(j > 1 for _, j in table) or not any(j == 1 and c for (_, j), c in table.items()):
        raise UserInputError("a rational input must have the form den*T - num")
    size = max(i for i, _ in table) + 1
    den = [0] * size
    num = [0] * size
    for (i, j), c in table.items():
        if j == 1:
            den[i] += c
        else:
            num[i] -= c
    return RationalSeriesQ(num, den)


# -- classification ----------------------------------------------------------------


BOUNDED = "Bounded"
UNBOUNDED = "Unbounded"


def cyclotomic_exponent(D):
    """lcm of every m with phi(m) <= D; any root of unity of degree <= D has order dividing it."""
    L = 1
    # phi(m) >= sqrt(m/2), so phi(m) <= D forces m <= 2 D^2
    for m in range(1, 2 * D * D + 3):
        if _totient(m) <= D:
            L = lcm(L, m)
    return L


def _x_power_mod(e, mod):
    """x^e modulo mod over Q."""
    result = [Fraction(1)]
    base = _qdivmod([Fraction(0), Fraction(1)], mod)[1]
    while e:
        if e & 1:
            result = _qdivmod(_qmul(result, base), mod)[1]
        e >>= 1
        if e:
            base = _qdivmod(_qmul(base, base), mod)[1]
    return result


def classify_bounded(y):
    den = [Fraction(c) for c in y.den]
    D = len(den) - 1
    if D == 0:
        return BOUNDED
    if len(_qgcd(den, _qderiv(den))) > 1:
        return UNBOUNDED
    L = cyclotomic_exponent(D)
    rem = _x_power_mod(L, den)
    # den | x^L - 1  iff  x^L = 1 mod den
    return BOUNDED if _qtrim(rem) == [Fraction(1)] else UNBOUNDED


# -- sweep ---------------------------------------------------------------------------


class SweepRow:
    def __init__(self, p, n_p=None, skipped=None):
        self.p = p
        self.n_p = n_p
        self.skipped = skipped


class SweepResult:
    def __init__(self, y, rows):
        self.y = y
        self.rows = rows

    def admissible(self):
        return {row.p: row.n_p for row in self.rows if row.skipped is None}

    def to_text(self):
        lines = [HEADER, f"y = ({_fmt(self.y.num)}) / ({_fmt(self.y.den)})",
                 f"classification: {classify_bounded(self.y)}", "",
                 "p | N_p | skipped-reason"]
        for row in self.rows:
            n = "-" if row.n_p is None else str(row.n_p)
            lines.append(f"{row.p} | {n} | {row.skipped or ''}".rstrip())
        return "\n".join(lines) + "\n"

    def to_json(self):
        obj = {
            "note": HEADER,
            "num": list(self.y.num),
            "den": list(self.y.den),
            "classification": classify_bounded(self.y),
            "rows": [{"p": r.p, "N_p": r.n_p, "skipped": r.skipped} for r in self.rows],
        }
        return json.dumps(obj, indent=2) + "\n"


def _fmt(a):
    terms = []
    for k, c in enumerate(a):
        if not c:
            continue
        mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
        if not mono:
            terms.append(str(c))
        elif c == 1:
            terms.append(mono)
        elif c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}*{mono}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def reduce_mod(y, p):
    """The curve den*T - num over F_p and the branch value a0 = num(0)/den(0)."""
    ctx = FieldCtx(p)
    table = {}
    for i, c in enumerate(y.den):
        if c % p:
            table[(i, 1)] = c % p
    for i, c in enumerate(y.num):
        if c % p:
            table[(i, 0)] = (-c) % p
    a0 = (y.num[0] if y.num else 0) * pow(y.den[0], -1, p) % p
    return PlaneCurve(ctx, table), a0


def skip_reason(y, p):
    if y.den[0] % p == 0:
        return "p divides den(0)"
    if y.den[-1] % p == 0:
        return "p divides the leading coefficient of den"
    return None


def prime_sweep(y, primes, max_states=10 ** 6):
    rows = []
    for p in sorted(set(primes)):
        if not is_prime(p):
            raise UserInputError(f"{p} is not prime")
        reason = skip_reason(y, p)
        if reason is not None:
            rows.append(SweepRow(p, skipped=reason))
            continue
        curve, a0 = reduce_mod(y, p)
        rows.append(SweepRow(p, len(enumerate_kernel(curve, a0, max_states=max_states))))
    if not any(r.skipped is None for r in rows):
        raise ComputationRefused("no admissible prime in the sweep")
    return SweepResult(y, rows)


def parse_prime_range(text):
    """'a..b' -> primes in [a, b]; also accepts a comma-separated list."""
    try:
        if ".." in text:
            a, b = (int(t) for t in text.split(".."))
            return [p for p in range(a, b + 1) if is_prime(p)]
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UserInputError(f"cannot parse prime range {text!r}") from None
