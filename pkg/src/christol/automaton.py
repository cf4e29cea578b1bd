"""Deterministic finite automata with output (DFAOs) reading base-q digits.

A reverse DFAO reads the digits of n least significant first, a forward
DFAO most significant first. n = 0 is the empty word, so its value is the
output of the initial state.
"""

import json
from collections import deque

from .errors import InvariantBreach, StateLimitError, UserInputError

REVERSE = "reverse"
FORWARD = "forward"
CONVENTIONS = (REVERSE, FORWARD)

DEFAULT_MAX_STATES = 10 ** 6


class Dfao:
    """States 0..n_states-1, ``delta[s][c]`` transitions, ``tau[s]`` outputs."""

    def __init__(self, q, delta, tau, initial=0, convention=REVERSE):
        if convention not in CONVENTIONS:
            raise UserInputError(f"unknown convention {convention!r}")
        n = len(delta)
        if len(tau) != n:
            raise UserInputError("delta and tau disagree on the number of states")
        if not 0 <= initial < max(n, 1):
            raise UserInputError("initial state out of range")
        for row in delta:
            if len(row) != q or any(not 0 <= t < n for t in row):
                raise UserInputError("transition table is not total over the digits")
        self.q = q
        self.delta = [list(row) for row in delta]
        self.tau = list(tau)
        self.initial = initial
        self.convention = convention

    @property
    def n_states(self):
        return len(self.delta)

    def __len__(self):
        return len(self.delta)

    def __eq__(self, other):
        return (isinstance(other, Dfao) and self.q == other.q and self.delta == other.delta
                and self.tau == other.tau and self.initial == other.initial
                and self.convention == other.convention)

    def __repr__(self):
        return f"Dfao(q={self.q}, states={self.n_states}, {self.convention})"

    def run(self, word):
        """Output after reading ``word`` (digits in reading order)."""
        s = self.initial
        delta = self.delta
        for c in word:
            s = delta[s][c]
        return self.tau[s]

    def word(self, n):
        """The digits of n in the order this DFAO reads them."""
        digits = to_digits(n, self.q)
        return digits if self.convention == REVERSE else digits[::-1]


def to_digits(n, q):
    """Base-q digits of n, least significant first; [] for n = 0."""
    if n < 0:
        raise UserInputError("only non-negative integers have base-q expansions")
    out = []
    while n:
        n, c = divmod(n, q)
        out.append(c)
    return out


def dfao_eval(dfao, n):
    return dfao.run(dfao.word(n))


def build_reverse_dfao(kernel):
    """States are the kernel elements; the digit maps are the transitions."""
    return Dfao(kernel.q, kernel.transitions, kernel.outputs, 0, REVERSE)


def build_forward_dfao(rep, max_states=DEFAULT_MAX_STATES):
    """Orbit of the output functional under the transposed digit matrices."""
    q = rep.q
    start = rep.functional
    index = {start: 0}
    states = [start]
    delta = []
    queue = deque([start])
    while queue:
        mu = queue.popleft()
        row = []
        for c in range(q):
            nu = rep.apply_transpose(c, mu)
            k = index.get(nu)
            if k is None:
                if len(states) >= max_states:
                    raise StateLimitError(f"forward automaton exceeds {max_states} states")
                k = len(states)
                index[nu] = k
                states.append(nu)
                queue.append(nu)
            row.append(k)
        delta.append(row)
    tau = [rep.pair(mu, rep.start) for mu in states]
    return Dfao(q, delta, tau, 0, FORWARD)


def reachable(dfao):
    seen = {dfao.initial}
    order = [dfao.initial]
    queue = deque(order)
    while queue:
        s = queue.popleft()
        for t in dfao.delta[s]:
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return order


def canonical(dfao):
    """Renumber states in breadth-first order from the initial state.

    Unreachable states are dropped. Two DFAOs are isomorphic exactly when
    their canonical forms are equal.
    """
    order = reachable(dfao)
    new = {s: k for k, s in enumerate(order)}
    delta = [[new[t] for t in dfao.delta[s]] for s in order]
    tau = [dfao.tau[s] for s in order]
    return Dfao(dfao.q, delta, tau, 0, dfao.convention)


def isomorphic(a, b):
    return canonical(a) == canonical(b)


def minimize(dfao):
    """Moore partition refinement; classes start from the outputs."""
    d = canonical(dfao)
    n = d.n_states
    labels = {}
    block = [labels.setdefault(t, len(labels)) for t in d.tau]
    count = len(labels)
    while True:
        sigs = {}
        new_block = [sigs.setdefault((block[s],) + tuple(block[t] for t in d.delta[s]), len(sigs))
                     for s in range(n)]
        if len(sigs) == count:
            break
        block, count = new_block, len(sigs)
    delta = [None] * count
    tau = [None] * count
    for s in range(n):
        b = block[s]
        if delta[b] is None:
            delta[b] = [block[t] for t in d.delta[s]]
            tau[b] = d.tau[s]
    return canonical(Dfao(d.q, delta, tau, block[d.initial], d.convention))


def check_leading_zero_invariance(dfao, limit=10 ** 4, max_zeros=3):
    """True iff prepending 1..max_zeros zero digits never changes the output for n < limit."""
    delta, tau = dfao.delta, dfao.tau
    if dfao.convention == REVERSE:
        # leading zeros are read last
        for n in range(limit):
            s = dfao.initial
            for c in dfao.word(n):
                s = delta[s][c]
            out = tau[s]
            for _ in range(max_zeros):
                s = delta[s][0]
                if tau[s] != out:
                    return False
        return True
    starts = [dfao.initial]
    for _ in range(max_zeros):
        starts.append(delta[starts[-1]][0])
    for n in range(limit):
        word = dfao.word(n)
        outs = set()
        for s in starts:
            for c in word:
                s = delta[s][c]
            outs.add(tau[s])
        if len(outs) > 1:
            return False
    return True


# -- serialization -------------------------------------------------------------


def to_json(dfao):
    """Fixed key order, one transition row per line; byte-for-byte reproducible."""
    rows = ",\n".join(f"    {json.dumps(row)}" for row in dfao.delta)
    return (
        "{\n"
        f'  "q": {dfao.q},\n'
        f'  "convention": {json.dumps(dfao.convention)},\n'
        f'  "n_states": {dfao.n_states},\n'
        f'  "initial": {dfao.initial},\n'
        f'  "delta": [\n{rows}\n  ],\n'
        f'  "tau": {json.dumps(dfao.tau)}\n'
        "}\n"
    )


def to_dot(dfao, name="dfao"):
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  node [shape=circle];",
             "  start [shape=point];", f"  start -> q{dfao.initial};"]
    for s in range(dfao.n_states):
        lines.append(f'  q{s} [label="q{s}/{dfao.tau[s]}"];')
    for s in range(dfao.n_states):
        grouped = {}
        for c, t in enumerate(dfao.delta[s]):
            grouped.setdefault(t, []).append(str(c))
        for t, digits in grouped.items():
            lines.append(f'  q{s} -> q{t} [label="{",".join(digits)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def to_text(dfao):
    lines = [f"{dfao.convention}-reading DFAO, base {dfao.q}, {dfao.n_states} states, "
             f"initial q{dfao.initial}"]
    for s in range(dfao.n_states):
        row = " ".join(f"{c}->q{t}" for c, t in enumerate(dfao.delta[s]))
        lines.append(f"  q{s} / {dfao.tau[s]} : {row}")
    return "\n".join(lines) + "\n"


def serialize(dfao, fmt="json"):
    if fmt == "json":
        return to_json(dfao)
    if fmt == "dot":
        return to_dot(dfao)
    if fmt == "text":
        return to_text(dfao)
    raise UserInputError(f"unknown format {fmt!r}")


def parse_json(text):
    try:
        obj = json.loads(text)
        dfao = Dfao(obj["q"], obj["delta"], obj["tau"], obj["initial"], obj["convention"])
    except (ValueError, KeyError, TypeError) as exc:
        raise UserInputError(f"not a DFAO in JSON form: {exc}") from None
    if obj.get("n_states", dfao.n_states) != dfao.n_states:
        raise UserInputError("n_states does not match the transition table")
    return dfao


def check_generates(dfao, seq):
    """Raise InvariantBreach unless dfao produces seq[n] for every n."""
    for n, a in enumerate(seq):
        got = dfao_eval(dfao, n)
        if got != a:
            raise InvariantBreach(f"automaton gives {got} at n = {n}, expected {a}")
