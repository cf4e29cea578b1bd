"""Linear algebra over F_q(x) and over F_q.

Systems over F_q(x) are cleared of denominators row by row and then reduced
with fraction-free Gauss-Jordan elimination over F_q[x]: every update is
divided exactly by the previous pivot, which keeps entry degrees linear in
the step count instead of exponential.
"""

from ..errors import UserInputError
from . import poly as P
from .ratfunc import RatFunc


def _row_to_poly(ctx, row):
    """Scale a row of RatFunc by the lcm of its denominators."""
    den = P.ONE
    for a in row:
        if a.den != P.ONE:
            den = P.plcm(ctx, den, a.den)
    if den == P.ONE:
        return [a.num for a in row]
    return [P.pmul(ctx, a.num, P.pexact_div(ctx, den, a.den)) if a.num else P.ZERO
            for a in row]


def ff_gauss_jordan(ctx, rows, ncols=None):
    """Fraction-free Gauss-Jordan reduction of a matrix over F_q[x].

    ``rows`` is a list of lists of polynomials and is not modified. Returns
    ``(reduced, pivots)`` where ``pivots[k]`` is the column of the k-th
    pivot row. Pivot search only looks at the first ``ncols`` columns.
    """
    m = [list(r) for r in rows]
    if not m:
        return m, []
    width = len(m[0])
    ncols = width if ncols is None else ncols
    pivots = []
    prev = P.ONE
    k = 0
    for col in range(ncols):
        if k == len(m):
            break
        best = None
        for i in range(k, len(m)):
            if m[i][col] and (best is None or len(m[i][col]) < len(m[best][col])):
                best = i
        if best is None:
            continue
        m[k], m[best] = m[best], m[k]
        piv = m[k][col]
        rk = m[k]
        for i in range(len(m)):
            if i == k:
                continue
            ri = m[i]
            a = ri[col]
            if not a:
                if prev != piv:
                    # still rescale so every row carries the current pivot
                    m[i] = [P.pexact_div(ctx, P.pmul(ctx, piv, e), prev) if e else P.ZERO
                            for e in ri]
                continue
            new = []
            for j in range(width):
                e = P.psub(ctx, P.pmul(ctx, piv, ri[j]), P.pmul(ctx, a, rk[j]))
                new.append(P.pexact_div(ctx, e, prev) if e else P.ZERO)
            m[i] = new
        pivots.append(col)
        prev = piv
        k += 1
    return m, pivots


def _check_rect(matrix):
    if not matrix:
        return 0
    n = len(matrix[0])
    if any(len(r) != n for r in matrix):
        raise UserInputError("matrix rows have different lengths")
    return n


def solve_linear(ctx, matrix, rhs):
    """Solve ``matrix * s = rhs`` over F_q(x); None if inconsistent.

    Free variables are set to zero.
    """
    ncols = _check_rect(matrix)
    if len(rhs) != len(matrix):
        raise UserInputError(f"rhs has length {len(rhs)}, expected {len(matrix)}")
    rows = [_row_to_poly(ctx, list(r) + [b]) for r, b in zip(matrix, rhs)]
    red, pivots = ff_gauss_jordan(ctx, rows, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    sol = [RatFunc.zero(ctx) for _ in range(ncols)]
    for k, col in enumerate(pivots):
        sol[col] = RatFunc(ctx, red[k][ncols], red[k][col])
    return sol


def nullspace(ctx, matrix):
    """Basis of {s : matrix * s = 0} over F_q(x)."""
    ncols = _check_rect(matrix)
    rows = [_row_to_poly(ctx, r) for r in matrix]
    red, pivots = ff_gauss_jordan(ctx, rows, ncols)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        vec = [RatFunc.zero(ctx) for _ in range(ncols)]
        vec[free] = RatFunc.one(ctx)
        for k, col in enumerate(pivots):
            if red[k][free]:
                vec[col] = RatFunc(ctx, P.pneg(ctx, red[k][free]), red[k][col])
        basis.append(vec)
    return basis


def inverse_fraction_free(ctx, matrix):
    """Inverse of a square polynomial matrix as ``(delta, adj)``.

    ``adj`` is a polynomial matrix with ``matrix^-1 = adj / delta``. Raises
    ZeroDivisionError when the matrix is singular.
    """
    n = len(matrix)
    rows = [list(r) + [P.ONE if i == j else P.ZERO for j in range(n)]
            for i, r in enumerate(matrix)]
    red, pivots = ff_gauss_jordan(ctx, rows, n)
    if len(pivots) < n:
        raise ZeroDivisionError("singular matrix")
    delta = red[n - 1][n - 1]
    # every pivot row ends up scaled by the final pivot
    for k in range(n):
        if red[k][k] != delta:
            raise ArithmeticError("fraction-free reduction lost its common pivot")
    return delta, [row[n:] for row in red]


def ratmat_inverse(ctx, matrix):
    """Inverse of a square matrix of RatFunc, as RatFunc entries."""
    n = len(matrix)
    _check_rect(matrix)
    scales = []
    rows = []
    for r in matrix:
        den = P.ONE
        for a in r:
            if a.den != P.ONE:
                den = P.plcm(ctx, den, a.den)
        scales.append(den)
        rows.append([P.pmul(ctx, a.num, P.pexact_div(ctx, den, a.den)) if a.num else P.ZERO
                     for a in r])
    delta, adj = inverse_fraction_free(ctx, rows)
    # (D A)^-1 = A^-1 D^-1, so column j of A^-1 is column j of (DA)^-1 times scale_j
    return [[RatFunc(ctx, P.pmul(ctx, adj[i][j], scales[j]), delta) for j in range(n)]
            for i in range(n)]


# -- linear algebra over F_q ------------------------------------------------


def _fq_ops(ctx):
    if ctx.r == 1:
        p = ctx.p

        def sub_mul(a, c, b):
            return (a - c * b) % p
        return sub_mul
    add, mul, neg = ctx.add, ctx.mul, ctx.neg

    def sub_mul(a, c, b):
        return add(a, neg(mul(c, b)))
    return sub_mul


def fq_rref(ctx, rows):
    """Reduced row echelon form over F_q; returns (rows, pivot columns)."""
    m = [list(r) for r in rows]
    sub_mul = _fq_ops(ctx)
    pivots = []
    k = 0
    width = len(m[0]) if m else 0
    for col in range(width):
        piv = next((i for i in range(k, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[k], m[piv] = m[piv], m[k]
        inv = ctx.inv(m[k][col])
        m[k] = [ctx.mul(e, inv) for e in m[k]]
        rk = m[k]
        for i in range(len(m)):
            if i != k and m[i][col]:
                c = m[i][col]
                m[i] = [sub_mul(a, c, b) for a, b in zip(m[i], rk)]
        pivots.append(col)
        k += 1
        if k == len(m):
            break
    return m[:k], pivots


def fq_nullspace(ctx, rows, ncols=None):
    """Basis of the right null space of a matrix over F_q."""
    if not rows:
        n = ncols or 0
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    red, pivots = fq_rref(ctx, rows)
    n = len(rows[0])
    pivot_set = set(pivots)
    basis = []
    for free in range(n):
        if free in pivot_set:
            continue
        vec = [0] * n
        vec[free] = 1
        for k, col in enumerate(pivots):
            if red[k][free]:
                vec[col] = ctx.neg(red[k][free])
        basis.append(vec)
    return basis


def fq_rank(ctx, rows):
    if not rows:
        return 0
    return len(fq_rref(ctx, rows)[1])


class FqSpan:
    """Incrementally built F_q-span of vectors with coordinate tracking.

    ``add`` inserts a vector and reports whether it enlarged the span;
    ``express`` writes a vector in terms of the inserted basis vectors.
    """

    def __init__(self, ctx, length):
        self.ctx = ctx
        self.length = length
        self.basis = []
        # echelon rows: (pivot, row, combination over basis indices)
        self._rows = []
        self._sub_mul = _fq_ops(ctx)

    def __len__(self):
        return len(self.basis)

    def _reduce(self, vec):
        ctx, sub_mul = self.ctx, self._sub_mul
        vec = list(vec)
        combo = [0] * len(self.basis)
        for piv, row, rc in self._rows:
            c = vec[piv]
            if c:
                vec = [sub_mul(a, c, b) for a, b in zip(vec, row)]
                for j, e in enumerate(rc):
                    if e:
                        combo[j] = ctx.add(combo[j], ctx.mul(c, e))
        return vec, combo

    def express(self, vec):
        """Coefficients c with vec = sum c[j] basis[j], or None."""
        rest, combo = self._reduce(vec)
        if any(rest):
            return None
        return combo

    def add(self, vec):
        """Insert vec; returns True if it was independent."""
        if len(vec) != self.length:
            raise ValueError("vector length mismatch")
        rest, combo = self._reduce(vec)
        piv = next((i for i, a in enumerate(rest) if a), None)
        if piv is None:
            return False
        ctx = self.ctx
        inv = ctx.inv(rest[piv])
        row = [ctx.mul(a, inv) for a in rest]
        # row = inv * (vec - sum combo_j basis_j)
        idx = len(self.basis)
        rc = [ctx.mul(ctx.neg(c), inv) for c in combo] + [inv]
        for k, (p_, r_, c_) in enumerate(self._rows):
            self._rows[k] = (p_, r_, c_ + [0])
        self._rows.append((piv, row, rc))
        self.basis.append(tuple(vec))
        assert idx == len(self.basis) - 1
        return True
