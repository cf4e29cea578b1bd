"""State-complexity bounds, base p versus base q, and recovering an
annihilating polynomial from a sequence.
"""

import json

from .algebra.linalg import fq_nullspace
from .automaton import REVERSE, Dfao, minimize
from .errors import NoRelationError, PoleError, PrecisionError, UserInputError
from .kernel import enumerate_kernel, extract_representation, kernel_truncated
from .series import TruncSeries, constant_term, hensel_expand, series_mul

LANDAU_MAX = 200


def _primes_upto(n):
    sieve = [True] * (n + 1)
    out = []
    for k in range(2, n + 1):
        if sieve[k]:
            out.append(k)
            for j in range(k * k, n + 1, k):
                sieve[j] = False
    return out


def landau(n):
    """Largest lcm of a partition of n (Landau's function)."""
    if not 0 <= n <= LANDAU_MAX:
        raise UserInputError(f"landau(n) is tabulated for 0 <= n <= {LANDAU_MAX}")
    # best[s]: largest product of prime powers of distinct primes with sum <= s
    best = [1] * (n + 1)
    for p in _primes_upto(n):
        new = best[:]
        pk = p
        while pk <= n:
            for s in range(pk, n + 1):
                cand = best[s - pk] * pk
                if cand > new[s]:
                    new[s] = cand
            pk *= p
        best = new
    return best[n]


def ceil_log(p, t):
    """Smallest k >= 0 with p^k >= t."""
    k = 0
    while p ** k < t:
        k += 1
    return k


BOUND_NAMES = ("main", "refined", "easy", "forward", "genus_free")


class ComplexityReport:
    """Observed state counts against the bounds in terms of q, d, h and g."""

    def __init__(self, q, p, r, d, h, genus_input, n_rev, n_fwd):
        self.q, self.p, self.r = q, p, r
        self.d, self.h = d, h
        self.genus_input = genus_input
        self.genus_bound = (d - 1) * (h - 1) if h >= 1 else 0
        self.genus_substituted = genus_input is None
        g = self.genus_bound if genus_input is None else genus_input
        self.g = g
        self.n_rev = n_rev
        self.n_fwd = n_fwd
        T = max(h, d)
        main = q ** (h + d + g - 1)
        self.bounds = {
            "main": main,
            "refined": 1 + ceil_log(p, T) + r * landau(h + 2 * d) * q ** g + main,
            "easy": q ** (h + 3 * d + g - 1),
            "forward": q ** (h + 2 * d + g - 1),
            "genus_free": q ** (h * d),
        }
        observed = {
            "main": n_rev,
            "refined": n_rev,
            "easy": max(n_rev, n_fwd) if n_fwd is not None else n_rev,
            "forward": n_fwd,
            "genus_free": n_rev,
        }
        self.observed = observed
        self.verdicts = {}
        for name in BOUND_NAMES:
            value = observed[name]
            if value is None:
                self.verdicts[name] = "N/A"
            else:
                self.verdicts[name] = "PASS" if value <= self.bounds[name] else "FAIL"

    def as_dict(self):
        return {
            "q": self.q,
            "d": self.d,
            "h": self.h,
            "genus_input": self.genus_input,
            "genus_bound": self.genus_bound,
            "genus_used": self.g,
            "genus_substituted": self.genus_substituted,
            "N_rev": self.n_rev,
            "N_fwd": self.n_fwd,
            "bounds": dict(self.bounds),
            "verdicts": dict(self.verdicts),
        }

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2) + "\n"

    def to_text(self):
        g_note = (f"g = {self.g} (Castelnuovo fallback (d-1)(h-1); no genus given)"
                  if self.genus_substituted else f"g = {self.g} (user supplied)")
        rows = [
            ("main", "q^(h+d+g-1)"),
            ("refined", "1+ceil(log_p T)+r*L(h+2d)*q^g+q^(h+d+g-1)"),
            ("easy", "q^(h+3d+g-1)"),
            ("forward", "q^(h+2d+g-1)"),
            ("genus_free", "q^(hd)"),
        ]
        lines = [f"q = {self.q}, d = {self.d}, h = {self.h}, {g_note}",
                 f"N_rev = {self.n_rev}, N_fwd = {self.n_fwd}", ""]
        w1 = max(len(name) for name, _ in rows)
        w2 = max(len(expr) for _, expr in rows)
        w3 = max(len(str(v)) for v in self.bounds.values())
        lines.append(f"{'bound':<{w1}}  {'expression':<{w2}}  {'value':>{w3}}  observed  verdict")
        for name, expr in rows:
            obs = self.observed[name]
            obs = "-" if obs is None else str(obs)
            lines.append(f"{name:<{w1}}  {expr:<{w2}}  {self.bounds[name]:>{w3}}  "
                         f"{obs:>8}  {self.verdicts[name]}")
        return "\n".join(lines) + "\n"


def bounds_report(curve, genus=None, n_rev=None, n_fwd=None):
    ctx = curve.ctx
    if genus is not None and genus < 0:
        raise UserInputError("genus must be non-negative")
    return ComplexityReport(ctx.q, ctx.p, ctx.r, curve.d, curve.h, genus, n_rev, n_fwd)


# -- base p versus base q ----------------------------------------------------------


def base_p_kernel_size(curve, a0):
    """Size of the p-kernel of the branch series over F_q, with q = p^r.

    Lambda_i takes p-th roots of coefficients, so after k steps its orbit
    holds the kernel sequences twisted by Frobenius^-k. States (u, k mod r)
    with output frob^k(u(0)) undo the twist; minimizing that automaton
    counts the distinct kernel sequences.
    """
    ctx = curve.ctx
    p, r = ctx.p, ctx.r
    start = (curve.y(), 0)
    index = {start: 0}
    states = [start]
    delta = []
    k = 0
    while k < len(states):
        u, t = states[k]
        row = []
        for i in range(p):
            nxt = (curve.lambda_p(i, u), (t + 1) % r)
            j = index.get(nxt)
            if j is None:
                j = len(states)
                index[nxt] = j
                states.append(nxt)
            row.append(j)
        delta.append(row)
        k += 1
    branch = None
    tau = []
    for u, t in states:
        try:
            c = constant_term(curve, u, a0)
        except PoleError:
            branch = branch or hensel_expand(curve, a0, 64)
            c = constant_term(curve, u, a0, branch)
        for _ in range(t):
            c = ctx.frob(c)
        tau.append(c)
    return minimize(Dfao(p, delta, tau, 0, REVERSE)).n_states


class BaseComparison:
    def __init__(self, p, q, n_p, n_q):
        self.p, self.q = p, q
        self.n_p, self.n_q = n_p, n_q
        lower = n_q <= n_p
        upper = (p - 1) * n_p <= (q - 1) * n_q
        self.verdict = "PASS" if lower and upper else "FAIL"

    def as_dict(self):
        return {"p": self.p, "q": self.q, "N_p": self.n_p, "N_q": self.n_q,
                "verdict": self.verdict}

    def __repr__(self):
        return f"BaseComparison(N_{self.p}={self.n_p}, N_{self.q}={self.n_q}, {self.verdict})"


def base_compare(curve=None, a0=None, series=None):
    """Check N_q <= N_p <= (q-1)/(p-1) N_q from a curve branch or a series prefix."""
    if curve is not None:
        ctx = curve.ctx
        n_q = len(enumerate_kernel(curve, a0))
        n_p = base_p_kernel_size(curve, a0) if ctx.r > 1 else n_q
    elif series is not None:
        ctx = series.ctx
        n_q = len(kernel_truncated(series, ctx.q))
        n_p = len(kernel_truncated(series, ctx.p)) if ctx.r > 1 else n_q
    else:
        raise UserInputError("base_compare needs a curve or a series")
    return BaseComparison(ctx.p, ctx.q, n_p, n_q)


# -- annihilating polynomial -----------------------------------------------------


def default_caps(q, m):
    return min(q ** m - 1, 32), min(m * q ** (m + 1), 256)


def _powers(ctx, s, D, n):
    out = [[1] + [0] * (n - 1)]
    for _ in range(D):
        out.append(series_mul(ctx, out[-1], s, n))
    return out


def _relation_matrix(ctx, pw, D, H, M):
    """Rows: coefficients of x^k, k < M; columns: unknowns c[i][j], x^i T^j."""
    cols = []
    for j in range(D + 1):
        for i in range(H + 1):
            col = [0] * M
            src = pw[j]
            for k in range(i, M):
                col[k] = src[k - i]
            cols.append(col)
    return [[cols[c][k] for c in range(len(cols))] for k in range(M)]


def _annihilates(ctx, table, s, n):
    D = max(j for _, j in table)
    pw = _powers(ctx, s, D, n)
    acc = [0] * n
    for (i, j), c in table.items():
        src = pw[j]
        for k in range(i, n):
            if src[k - i]:
                acc[k] = ctx.add(acc[k], ctx.mul(c, src[k - i]))
    return not any(acc)


def _normalize(ctx, vec, D, H):
    table = {}
    for j in range(D + 1):
        for i in range(H + 1):
            c = vec[j * (H + 1) + i]
            if c:
                table[(i, j)] = c
    # leading coefficient: highest T power, then highest x power
    lead = table[max(table, key=lambda ij: (ij[1], ij[0]))]
    inv = ctx.inv(lead)
    return {k: ctx.mul(v, inv) for k, v in table.items()}


class Relation:
    def __init__(self, table, degree, height, caps, verified_to):
        self.table = table
        self.degree = degree
        self.height = height
        self.caps = caps
        self.verified_to = verified_to

    def __repr__(self):
        return f"Relation(deg_T={self.degree}, deg_x={self.height})"


def _find(ctx, s, D, H, N):
    M = 2 * (D + 1) * (H + 1)
    pw = _powers(ctx, s, D, M)
    rows = _relation_matrix(ctx, pw, D, H, M)
    null = fq_nullspace(ctx, rows)
    for vec in null:
        table = _normalize(ctx, vec, D, H)
        if max(j for _, j in table) == 0:
            continue
        if _annihilates(ctx, table, s, min(2 * M, N)):
            return table
    return None


def algebraize(s, m=None, degree_cap=None, height_cap=None):
    """A nonzero F(x, T) with F(x, s) = 0 to the full precision of s.

    Searches T-degree D = 1, 2, ... and for each D the least x-degree H. A
    candidate is accepted only if it also annihilates 2 * (D+1)(H+1)
    further coefficients, i.e. at twice the precision used to find it.
    """
    ctx = s.ctx
    q = ctx.q
    N = len(s)
    if m is None:
        m = len(kernel_truncated(s, q))
    dcap, hcap = default_caps(q, m)
    dcap = dcap if degree_cap is None else degree_cap
    hcap = hcap if height_cap is None else height_cap
    coeffs = list(s.coeffs)
    if N < 8:
        raise PrecisionError("series too short to search for a relation", required=8)
    for D in range(1, dcap + 1):
        # largest height whose doubled system still fits in the data
        hmax = min(hcap, N // (4 * (D + 1)) - 1)
        if hmax < 0:
            break
        if _find(ctx, coeffs, D, hmax, N) is None:
            continue
        lo, hi = 0, hmax
        while lo < hi:
            mid = (lo + hi) // 2
            if _find(ctx, coeffs, D, mid, N) is None:
                lo = mid + 1
            else:
                hi = mid
        table = _find(ctx, coeffs, D, lo, N)
        if not _annihilates(ctx, table, coeffs, N):
            continue
        degree = max(j for _, j in table)
        height = max(i for i, _ in table)
        return Relation(table, degree, height, (dcap, hcap), N)
    raise NoRelationError(
        f"no relation with deg_T <= {dcap} and deg_x <= {hcap} is visible at precision {N}")


def algebraize_kernel(kernel, N=512):
    """algebraize for a kernel: expand its sequence through the representation."""
    rep = kernel.representation
    if rep is None:
        rep = extract_representation(kernel)
    s = TruncSeries(kernel.ctx, [rep.evaluate(n) for n in range(N)])
    return algebraize(s, m=len(kernel))
