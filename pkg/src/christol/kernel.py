"""The q-kernel of an algebraic power series and its q-representation.

Two routes lead to the same transition structure:

* :func:`enumerate_kernel` runs a breadth-first search over the orbit of y
  under the exact operators lambda_q in the function field. Canonical
  coordinates make equality exact.
* :func:`kernel_truncated` works from a coefficient prefix alone. It learns
  a linear q-representation from the decimated subsequences, checks that
  the representation reproduces every known coefficient, and then
  enumerates the orbit of the start vector in coordinates.
"""

from collections import deque

from .algebra import poly as P
from .algebra.linalg import FqSpan
from .errors import InvariantBreach, PoleError, PrecisionError, StateLimitError
from .series import TruncSeries, check_branch_point, constant_term, hensel_expand

DEFAULT_MAX_STATES = 10 ** 6

# a stored state must keep at least this many known coefficients
MIN_KNOWN_COEFFS = 8


class Kernel:
    """Orbit of a start element under the q digit maps.

    ``elements[0]`` is the start element, ``transitions[s][c]`` the index
    of the image of state s under digit c and ``outputs[s]`` its constant
    term. Elements are FFElem for the exact route and coordinate vectors
    over a learned basis for the truncated route.
    """

    def __init__(self, ctx, q, elements, transitions, outputs, curve=None,
                 representatives=None, representation=None):
        self.ctx = ctx
        self.q = q
        self.elements = elements
        self.transitions = transitions
        self.outputs = outputs
        self.curve = curve
        self.representatives = representatives
        self.representation = representation

    def __len__(self):
        return len(self.elements)

    def dump(self):
        """Text table: state | digit -> state | output, then representatives."""
        fmt = self.ctx.format
        width = len(str(max(len(self) - 1, 0)))
        lines = ["state | " + " ".join(f"{c}->" for c in range(self.q)) + " | output"]
        for s in range(len(self)):
            row = " ".join(f"{c}->{t:<{width}}" for c, t in enumerate(self.transitions[s]))
            lines.append(f"{s:>{width}} | {row} | {fmt(self.outputs[s])}")
        lines.append("")
        for s, e in enumerate(self.elements):
            if self.curve is not None:
                rep = e.format()
            elif self.representatives is not None:
                rep = self.representatives[s].format()
            else:
                rep = str(e)
            lines.append(f"{s:>{width}}: {rep}")
        return "\n".join(lines)


# -- exact route -------------------------------------------------------------


def enumerate_kernel(curve, a0, start=None, branch=None, max_states=DEFAULT_MAX_STATES):
    """Breadth-first closure of ``start`` (default y) under lambda_q, digits 0..q-1."""
    ctx = curve.ctx
    q = ctx.q
    if branch is None:
        check_branch_point(curve, a0)
    start = curve.y() if start is None else start
    index = {start: 0}
    elements = [start]
    transitions = []
    queue = deque([start])
    while queue:
        u = queue.popleft()
        row = []
        for w in curve.lambda_q_all(u):
            k = index.get(w)
            if k is None:
                if len(elements) >= max_states:
                    raise StateLimitError(f"kernel exceeds {max_states} states")
                k = len(elements)
                index[w] = k
                elements.append(w)
                queue.append(w)
            row.append(k)
        transitions.append(row)

    outputs = []
    for u in elements:
        try:
            outputs.append(constant_term(curve, u, a0))
        except PoleError:
            if branch is None:
                branch = hensel_expand(curve, a0, 64)
            outputs.append(constant_term(curve, u, a0, branch))
    return Kernel(ctx, q, elements, transitions, outputs, curve=curve)


class Representation:
    """a(n) = lam . phi(c_u) ... phi(c_0) . v for (n)_q = c_u ... c_0.

    ``matrices[c][i][j]`` is row i, column j of phi(c), entries in F_q.
    """

    def __init__(self, ctx, q, matrices, start, functional):
        self.ctx = ctx
        self.q = q
        self.matrices = matrices
        self.start = tuple(start)
        self.functional = tuple(functional)

    @property
    def dim(self):
        return len(self.start)

    def apply(self, c, vec):
        ctx = self.ctx
        M = self.matrices[c]
        out = []
        for row in M:
            acc = 0
            for a, b in zip(row, vec):
                if a and b:
                    acc = ctx.add(acc, ctx.mul(a, b))
            out.append(acc)
        return tuple(out)

    def apply_transpose(self, c, vec):
        ctx = self.ctx
        M = self.matrices[c]
        m = self.dim
        out = []
        for j in range(m):
            acc = 0
            for i in range(m):
                if M[i][j] and vec[i]:
                    acc = ctx.add(acc, ctx.mul(M[i][j], vec[i]))
            out.append(acc)
        return tuple(out)

    def pair(self, mu, vec):
        ctx = self.ctx
        acc = 0
        for a, b in zip(mu, vec):
            if a and b:
                acc = ctx.add(acc, ctx.mul(a, b))
        return acc

    def evaluate(self, n):
        vec = self.start
        while n:
            n, c = divmod(n, self.q)
            vec = self.apply(c, vec)
        return self.pair(self.functional, vec)

    def __repr__(self):
        return f"Representation(dim={self.dim}, q={self.q})"


def _common_vectors(ctx, elements):
    """Coefficient vectors of kernel elements over one common denominator."""
    D = P.ONE
    for u in elements:
        for c in u.coords:
            if c.num and c.den != P.ONE:
                D = P.plcm(ctx, D, c.den)
    nums = []
    for u in elements:
        nums.append([P.pmul(ctx, c.num, P.pexact_div(ctx, D, c.den)) if c.num else P.ZERO
                     for c in u.coords])
    width = max((len(a) for row in nums for a in row), default=0)
    vecs = []
    for row in nums:
        v = []
        for a in row:
            v.extend(a)
            v.extend([0] * (width - len(a)))
        vecs.append(v)
    return vecs


def extract_representation(kernel):
    """The q-representation carried by the F_q-span of the kernel."""
    ctx, q = kernel.ctx, kernel.q
    if kernel.representation is not None:
        return kernel.representation
    vecs = _common_vectors(ctx, kernel.elements)
    length = len(vecs[0]) if vecs else 0
    span = FqSpan(ctx, length)
    basis_states = []
    for s, v in enumerate(vecs):
        if span.add(v):
            basis_states.append(s)
    m = len(basis_states)

    def coords(state):
        combo = span.express(vecs[state])
        if combo is None:
            raise InvariantBreach("kernel element outside the span of the basis")
        return combo

    matrices = []
    for c in range(q):
        cols = [coords(kernel.transitions[s][c]) for s in basis_states]
        matrices.append([[cols[j][i] for j in range(m)] for i in range(m)])
    start = coords(0) if m else ()
    functional = [kernel.outputs[s] for s in basis_states]
    rep = Representation(ctx, q, matrices, start, functional)
    kernel.representation = rep
    return rep


# -- truncated route ---------------------------------------------------------


def _decimate(s, q, depth, c):
    """a(q^depth * n + c) for all n with a known value."""
    return s.coeffs[c::q ** depth]


def learn_representation(s, q):
    """Learn a q-representation from the prefix s.

    Rows of the Hankel-style table are the decimations u_w for digit words w
    (least significant digit first). A breadth-first search keeps a word
    when its row is independent of the rows kept so far on their common
    window and only expands kept words. The resulting representation must
    reproduce every coefficient of s; otherwise the precision was too low.
    """
    ctx = s.ctx
    N = len(s)
    if all(a == 0 for a in s.coeffs):
        return Representation(ctx, q, [[] for _ in range(q)], (), ()), []
    # words as (depth, value of the digits)
    basis = []
    rows = []
    queue = deque([(0, 0)])
    while queue:
        depth, c = queue.popleft()
        row = _decimate(s, q, depth, c)
        window = min([len(row)] + [len(r) for r in rows])
        span = FqSpan(ctx, window)
        for r in rows:
            span.add(r[:window])
        if span.add(row[:window]):
            # a short row may be expressed through the basis but never joins it
            if len(row) < MIN_KNOWN_COEFFS:
                raise PrecisionError(
                    f"kernel state a({q}^{depth} n + {c}) has only {len(row)} "
                    "known coefficients",
                    required=q ** depth * MIN_KNOWN_COEFFS)
            basis.append((depth, c))
            rows.append(row)
            for d in range(q):
                queue.append((depth + 1, c + d * q ** depth))

    m = len(basis)
    window = min(len(r) for r in rows)
    span = FqSpan(ctx, window)
    for r in rows:
        if not span.add(r[:window]):
            raise PrecisionError("learned basis degenerates on its common window",
                                 required=N * q)

    matrices = [[[0] * m for _ in range(m)] for _ in range(q)]
    for j, (depth, c) in enumerate(basis):
        for d in range(q):
            child = _decimate(s, q, depth + 1, c + d * q ** depth)
            w = min(window, len(child))
            if w < 1:
                raise PrecisionError("no coefficients left to express a transition",
                                     required=N * q)
            sub = FqSpan(ctx, w)
            for r in rows:
                if not sub.add(r[:w]):
                    raise PrecisionError(
                        f"learned basis is not independent on {w} coefficients",
                        required=q ** (depth + 2) * MIN_KNOWN_COEFFS)
            combo = sub.express(child[:w])
            for i in range(m):
                matrices[d][i][j] = combo[i]
    start = tuple(1 if i == 0 else 0 for i in range(m))
    functional = tuple(r[0] for r in rows)
    rep = Representation(ctx, q, matrices, start, functional)
    for n in range(N):
        if rep.evaluate(n) != s.coeffs[n]:
            raise PrecisionError(
                f"learned representation disagrees with the series at index {n}",
                required=N * q)
    return rep, [(basis[j], rows[j]) for j in range(m)]


def kernel_truncated(s, q=None, max_states=DEFAULT_MAX_STATES):
    """Kernel-shaped table computed from the truncation s alone."""
    ctx = s.ctx
    q = ctx.q if q is None else q
    rep, basis_rows = learn_representation(s, q)
    m = rep.dim
    start = rep.start
    index = {start: 0}
    elements = [start]
    transitions = []
    queue = deque([start])
    while queue:
        vec = queue.popleft()
        row = []
        for c in range(q):
            w = rep.apply(c, vec)
            k = index.get(w)
            if k is None:
                if len(elements) >= max_states:
                    raise StateLimitError(f"truncated kernel exceeds {max_states} states")
                k = len(elements)
                index[w] = k
                elements.append(w)
                queue.append(w)
            row.append(k)
        transitions.append(row)
    outputs = [rep.pair(rep.functional, vec) for vec in elements]

    # representatives: the truncated series of each state on the common window
    window = min((len(r) for _, r in basis_rows), default=len(s))
    reps = []
    for vec in elements:
        acc = [0] * window
        for coef, (_, row) in zip(vec, basis_rows):
            if coef:
                for n in range(window):
                    if row[n]:
                        acc[n] = ctx.add(acc[n], ctx.mul(coef, row[n]))
        reps.append(TruncSeries(ctx, acc))
    if m == 0:
        reps = [TruncSeries(ctx, [0] * len(s))]
    return Kernel(ctx, q, elements, transitions, outputs, representatives=reps,
                  representation=rep)
